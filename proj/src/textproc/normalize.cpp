#include "coper/textproc/normalize.hpp"

#include "coper/common/error.hpp"
#include "coper/common/util.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <array>

namespace coper::text {

namespace {

constexpr std::array<std::string_view, 10> kTagNames = {
    "NOUN", "VERB", "ADJ", "ADV", "NUM", "PRON", "PREP", "CONJ", "PUNC", "OTHER"};

std::optional<char32_t> parse_codepoint(std::string_view field)
{
    if (field.empty()) {
        return std::nullopt;
    }
    if (field.size() > 2 && (field[0] == 'U' || field[0] == 'u') && field[1] == '+') {
        char32_t cp = 0;
        for (char c : field.substr(2)) {
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else return std::nullopt;
            cp = cp * 16 + static_cast<char32_t>(v);
            if (cp > 0x10FFFF) return std::nullopt;
        }
        return cp;
    }
    auto decoded = decode_utf8(field);
    if (decoded.size() != 1) {
        return std::nullopt;
    }
    return decoded[0];
}

bool is_word_char(char32_t cp) noexcept
{
    return cp != kZwnj && !is_space(cp) && !is_punctuation(cp);
}

std::u32string nfc(const std::u32string& in)
{
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) {
        throw InternalError("ICU NFC normalizer unavailable");
    }
    auto src = icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(in.data()),
                                             static_cast<int32_t>(in.size()));
    icu::UnicodeString out = norm->normalize(src, status);
    if (U_FAILURE(status)) {
        throw InternalError("ICU NFC normalization failed");
    }
    std::u32string result(static_cast<std::size_t>(out.countChar32()), U'\0');
    UErrorCode st2 = U_ZERO_ERROR;
    out.toUTF32(reinterpret_cast<UChar32*>(result.data()), static_cast<int32_t>(result.size()), st2);
    return result;
}

std::u32string normalize_pass(const std::u32string& input, const CharMap& table)
{
    std::u32string mapped;
    mapped.reserve(input.size());
    for (char32_t cp : input) {
        if (auto hit = table.lookup(cp)) {
            if (*hit) {
                mapped.push_back(**hit);
            }
        } else {
            mapped.push_back(cp);
        }
    }
    std::u32string composed = nfc(mapped);

    // Collapse ZWNJ runs and drop those not strictly between word chars.
    std::u32string joined;
    joined.reserve(composed.size());
    for (std::size_t i = 0; i < composed.size(); ++i) {
        char32_t cp = composed[i];
        if (cp != kZwnj) {
            joined.push_back(is_space(cp) ? U' ' : cp);
            continue;
        }
        std::size_t j = i;
        while (j + 1 < composed.size() && composed[j + 1] == kZwnj) {
            ++j;
        }
        bool left_ok = !joined.empty() && is_word_char(joined.back());
        bool right_ok = j + 1 < composed.size() && is_word_char(composed[j + 1]);
        if (left_ok && right_ok) {
            joined.push_back(kZwnj);
        }
        i = j;
    }

    std::u32string out;
    out.reserve(joined.size());
    for (char32_t cp : joined) {
        if (cp == U' ' && (out.empty() || out.back() == U' ')) {
            continue;
        }
        out.push_back(cp);
    }
    if (!out.empty() && out.back() == U' ') {
        out.pop_back();
    }
    return out;
}

}  // namespace

std::string_view to_string(PosTag tag) noexcept
{
    return kTagNames[static_cast<std::size_t>(tag)];
}

std::optional<PosTag> parse_pos_tag(std::string_view symbol) noexcept
{
    for (std::size_t i = 0; i < kTagNames.size(); ++i) {
        if (kTagNames[i] == symbol) {
            return static_cast<PosTag>(i);
        }
    }
    return std::nullopt;
}

CharMap CharMap::load(const std::filesystem::path& path)
{
    return parse(read_file(path), path.string());
}

CharMap CharMap::parse(std::string_view tsv, std::string_view source_name)
{
    CharMap table;
    std::size_t line_no = 0;
    for (auto raw : split(tsv, '\n')) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }
        if (trim(raw).empty() || raw.front() == '#') {
            continue;
        }
        auto fields = split(raw, '\t');
        if (fields.size() != 2) {
            throw ConfigError(std::string(source_name) + ":" + std::to_string(line_no) +
                              ": expected source<TAB>target");
        }
        auto source = parse_codepoint(trim(fields[0]));
        if (!source) {
            throw ConfigError(std::string(source_name) + ":" + std::to_string(line_no) +
                              ": invalid source codepoint");
        }
        auto target_field = trim(fields[1]);
        std::optional<char32_t> target;
        if (!target_field.empty()) {
            target = parse_codepoint(target_field);
            if (!target) {
                throw ConfigError(std::string(source_name) + ":" + std::to_string(line_no) +
                                  ": invalid target codepoint");
            }
        }
        table.m_map[*source] = target;
    }
    for (const auto& [src, dst] : table.m_map) {
        if (dst && table.m_map.contains(*dst)) {
            throw ConfigError(std::string(source_name) + ": target " + encode_utf8(std::u32string(1, *dst)) +
                              " is also a source; mapping must not chain");
        }
    }
    return table;
}

std::optional<std::optional<char32_t>> CharMap::lookup(char32_t cp) const
{
    auto it = m_map.find(cp);
    if (it == m_map.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool is_punctuation(char32_t cp) noexcept
{
    auto c = static_cast<UChar32>(cp);
    if (u_ispunct(c)) {
        return true;
    }
    switch (u_charType(c)) {
        case U_MATH_SYMBOL:
        case U_CURRENCY_SYMBOL:
        case U_MODIFIER_SYMBOL:
        case U_OTHER_SYMBOL:
            return true;
        default:
            return false;
    }
}

bool is_space(char32_t cp) noexcept
{
    return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0;
}

std::u32string decode_utf8(std::string_view text)
{
    std::u32string out;
    out.reserve(text.size());
    const auto* s = reinterpret_cast<const uint8_t*>(text.data());
    auto length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length) {
        int32_t at = i;
        UChar32 c;
        U8_NEXT(s, i, length, c);
        if (c < 0) {
            throw InputError("invalid UTF-8 byte sequence at offset " + std::to_string(at));
        }
        out.push_back(static_cast<char32_t>(c));
    }
    return out;
}

std::string encode_utf8(std::u32string_view text)
{
    std::string out;
    out.reserve(text.size() * 2);
    for (char32_t cp : text) {
        uint8_t buf[4];
        int32_t len = 0;
        U8_APPEND_UNSAFE(buf, len, static_cast<UChar32>(cp));
        out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
    }
    return out;
}

NormalizedText normalize(std::string_view text, const CharMap& table)
{
    std::u32string current = decode_utf8(text);
    // A pass can expose new work for the next one (a stripped ZWNJ may
    // bring a base and a combining mark together), so iterate to a fixed
    // point. In practice two passes suffice.
    for (int pass = 0; pass < 16; ++pass) {
        std::u32string next = normalize_pass(current, table);
        if (next == current) {
            break;
        }
        current = std::move(next);
    }
    return NormalizedText::trusted(encode_utf8(current));
}

}  // namespace coper::text
