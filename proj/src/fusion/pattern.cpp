#include "coper/fusion/pattern.hpp"

#include "coper/common/error.hpp"
#include "coper/common/util.hpp"

#include <cctype>

namespace coper::fusion {

using Kind = Pattern::State::Kind;

/// Recursive-descent parser emitting NFA fragments.
class PatternCompiler {
  public:
    explicit PatternCompiler(std::string_view src) : m_src(src) {}

    Pattern run()
    {
        Pattern p;
        p.m_source = std::string(trim(m_src));
        m_states = &p.m_states;
        skip_space();
        if (at_end()) {
            fail("empty pattern");
        }
        auto frag = alt();
        skip_space();
        if (!at_end()) {
            fail("unexpected '" + std::string(1, m_src[m_pos]) + "'");
        }
        int match = add({Kind::Match});
        patch(frag.outs, match);
        p.m_start = frag.start;
        return p;
    }

  private:
    // Dangling exits are (state, which) pairs; which = 0 for out, 1 for out2.
    struct Frag {
        int start;
        std::vector<std::pair<int, int>> outs;
    };

    int add(Pattern::State s)
    {
        m_states->push_back(s);
        return static_cast<int>(m_states->size() - 1);
    }

    void patch(const std::vector<std::pair<int, int>>& outs, int target)
    {
        for (auto [s, which] : outs) {
            ((which == 0) ? (*m_states)[s].out : (*m_states)[s].out2) = target;
        }
    }

    Frag alt()
    {
        auto left = concat();
        skip_space();
        while (!at_end() && m_src[m_pos] == '|') {
            ++m_pos;
            auto right = concat();
            int split = add({Kind::Split});
            (*m_states)[split].out = left.start;
            (*m_states)[split].out2 = right.start;
            left.outs.insert(left.outs.end(), right.outs.begin(), right.outs.end());
            left.start = split;
            skip_space();
        }
        return left;
    }

    Frag concat()
    {
        skip_space();
        if (at_end() || m_src[m_pos] == '|' || m_src[m_pos] == ')') {
            fail("empty alternative");
        }
        auto frag = repeat();
        for (;;) {
            skip_space();
            if (at_end() || m_src[m_pos] == '|' || m_src[m_pos] == ')') {
                return frag;
            }
            auto next = repeat();
            patch(frag.outs, next.start);
            frag.outs = std::move(next.outs);
        }
    }

    Frag repeat()
    {
        auto frag = atom();
        for (;;) {
            skip_space();
            if (at_end()) {
                return frag;
            }
            char c = m_src[m_pos];
            if (c != '+' && c != '*' && c != '?') {
                return frag;
            }
            ++m_pos;
            int split = add({Kind::Split});
            (*m_states)[split].out = frag.start;
            if (c == '+') {
                patch(frag.outs, split);
                frag.outs = {{split, 1}};
            } else if (c == '*') {
                patch(frag.outs, split);
                frag = Frag{split, {{split, 1}}};
            } else {
                frag.outs.emplace_back(split, 1);
                frag.start = split;
            }
        }
    }

    Frag atom()
    {
        skip_space();
        if (at_end()) {
            fail("unexpected end of pattern");
        }
        if (m_src[m_pos] == '(') {
            ++m_pos;
            auto inner = alt();
            skip_space();
            if (at_end() || m_src[m_pos] != ')') {
                fail("missing ')'");
            }
            ++m_pos;
            return inner;
        }
        auto begin = m_pos;
        while (!at_end() && (std::isalpha(static_cast<unsigned char>(m_src[m_pos])) || m_src[m_pos] == '_')) {
            ++m_pos;
        }
        auto word = m_src.substr(begin, m_pos - begin);
        if (word.empty()) {
            fail("unexpected '" + std::string(1, m_src[m_pos]) + "'");
        }
        int s;
        if (word == "ANY") {
            s = add({Kind::Any});
        } else if (auto tag = text::parse_pos_tag(word)) {
            s = add({Kind::Tag, *tag});
        } else {
            m_pos = begin;
            fail("unknown tag '" + std::string(word) + "'");
        }
        return Frag{s, {{s, 0}}};
    }

    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(m_src[m_pos]))) {
            ++m_pos;
        }
    }

    bool at_end() const { return m_pos >= m_src.size(); }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ConfigError("pattern '" + std::string(trim(m_src)) + "': " + what + " at column " +
                          std::to_string(m_pos + 1));
    }

    std::string_view m_src;
    std::size_t m_pos = 0;
    std::vector<Pattern::State>* m_states = nullptr;
};

Pattern Pattern::compile(std::string_view source) { return PatternCompiler(source).run(); }

namespace {

void add_state(const std::vector<Pattern::State>& states, int s, std::vector<int>& set, std::vector<char>& on)
{
    if (s < 0 || on[static_cast<std::size_t>(s)]) {
        return;
    }
    on[static_cast<std::size_t>(s)] = 1;
    if (states[static_cast<std::size_t>(s)].kind == Kind::Split) {
        add_state(states, states[static_cast<std::size_t>(s)].out, set, on);
        add_state(states, states[static_cast<std::size_t>(s)].out2, set, on);
        return;
    }
    set.push_back(s);
}

}  // namespace

std::optional<std::size_t> Pattern::longest_match(std::span<const text::PosTag> tags, std::size_t start) const
{
    std::vector<int> current, next;
    std::vector<char> on(m_states.size(), 0);
    add_state(m_states, m_start, current, on);
    std::optional<std::size_t> best;
    for (std::size_t i = start; i < tags.size() && !current.empty(); ++i) {
        next.clear();
        std::fill(on.begin(), on.end(), 0);
        for (int s : current) {
            const auto& st = m_states[static_cast<std::size_t>(s)];
            if (st.kind == Kind::Any || (st.kind == Kind::Tag && st.tag == tags[i])) {
                add_state(m_states, st.out, next, on);
            }
        }
        std::swap(current, next);
        for (int s : current) {
            if (m_states[static_cast<std::size_t>(s)].kind == Kind::Match) {
                best = i - start + 1;
                break;
            }
        }
    }
    return best;
}

PatternSet PatternSet::parse(std::string_view text, const std::string& source)
{
    PatternSet set;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        try {
            set.add(Pattern::compile(line));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (set.size() == 0) {
        throw ConfigError(source + ": no patterns");
    }
    return set;
}

PatternSet PatternSet::load(const std::filesystem::path& path)
{
    const std::string contents = read_file(path);
    return parse(contents, path.string());
}

std::vector<std::pair<std::size_t, std::size_t>> PatternSet::find_matches(std::span<const text::PosTag> tags) const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = 0;
    while (i < tags.size()) {
        std::size_t best = 0;
        for (const auto& p : m_patterns) {
            if (auto len = p.longest_match(tags, i)) {
                best = std::max(best, *len);
            }
        }
        if (best == 0) {
            ++i;
            continue;
        }
        out.emplace_back(i, i + best);
        i += best;
    }
    return out;
}

}  // namespace coper::fusion
