#pragma once

// Text pipeline and entity recognizer built from the shipped data files.

#include "coper/keywords/ner.hpp"
#include "coper/textproc/document.hpp"

#include <filesystem>
#include <memory>

namespace shipped {

inline const std::filesystem::path kData = COPER_DATA_DIR;

inline const coper::text::TextPipeline& pipeline()
{
    static const coper::text::TextPipeline p = [] {
        coper::text::TextPipeline out;
        out.charmap = coper::text::CharMap::load(kData / "mapping.tsv");
        out.stopwords = coper::text::StopwordSet::load(kData / "stopwords.txt", out.charmap);
        out.tagger = std::make_shared<coper::text::LexiconTagger>(
            coper::text::LexiconTagger::load(kData / "lexicon.tsv", out.charmap));
        return out;
    }();
    return p;
}

inline const coper::keywords::GazetteerRecognizer& ner()
{
    static const coper::keywords::GazetteerRecognizer r({
        coper::keywords::Gazetteer::load(kData / "gazetteer_place.txt", "PLACE", pipeline().charmap),
        coper::keywords::Gazetteer::load(kData / "gazetteer_person.txt", "PERSON", pipeline().charmap),
    });
    return r;
}

}  // namespace shipped
