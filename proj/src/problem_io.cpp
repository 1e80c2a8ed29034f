#include "bvtp/problem_io.hpp"

#include "bvtp/error.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

namespace bvtp {

namespace {

struct Value {
    std::variant<double, std::vector<Value>> data;

    bool is_number() const { return std::holds_alternative<double>(data); }
    double number() const { return std::get<double>(data); }
    const std::vector<Value>& list() const { return std::get<std::vector<Value>>(data); }
};

struct Entry {
    Value value;
    int line = 0;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    if (line <= 0) throw Error(ErrorCode::ParseError, msg);
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class ValueParser {
public:
    ValueParser(std::string_view text, int line) : text_(text), line_(line) {}

    Value parse() {
        Value v = value();
        skip_ws();
        if (pos_ != text_.size()) fail(line_, "unexpected trailing text '" + std::string(text_.substr(pos_)) + "'");
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    Value value() {
        skip_ws();
        if (pos_ >= text_.size()) fail(line_, "missing value");
        if (text_[pos_] == '[') {
            ++pos_;
            std::vector<Value> items;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ']') {
                ++pos_;
                return Value{std::move(items)};
            }
            while (true) {
                items.push_back(value());
                skip_ws();
                if (pos_ >= text_.size()) fail(line_, "unterminated list");
                if (text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (text_[pos_] == ']') {
                    ++pos_;
                    break;
                }
                fail(line_, std::string("expected ',' or ']' but found '") + text_[pos_] + "'");
            }
            return Value{std::move(items)};
        }
        return Value{number()};
    }

    double scalar() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        if (begin != end && *begin == '+') ++begin;
        double v = 0;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr == begin) {
            fail(line_, "malformed number near '" + std::string(text_.substr(pos_)) + "'");
        }
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return v;
    }

    double number() {
        double v = scalar();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            skip_ws();
            const double den = scalar();
            if (den == 0) fail(line_, "zero denominator");
            v /= den;
        }
        return v;
    }

    std::string_view text_;
    int line_;
    std::size_t pos_ = 0;
};

using Section = std::map<std::string, Entry>;

struct Document {
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_lines;
};

Document tokenize(std::string_view text) {
    Document doc;
    std::string current;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto hash = raw.find('#');
        std::string_view line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "malformed section header");
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (current.empty()) fail(line_no, "empty section name");
            if (doc.sections.count(current)) fail(line_no, "duplicate section [" + current + "]");
            doc.sections[current];
            doc.section_lines[current] = line_no;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        if (current.empty()) fail(line_no, "key outside of any section");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) fail(line_no, "empty key");
        auto& section = doc.sections[current];
        if (section.count(key)) fail(line_no, "duplicate key '" + key + "' in [" + current + "]");
        section[key] = Entry{ValueParser(trim(line.substr(eq + 1)), line_no).parse(), line_no};
    }
    return doc;
}

class Reader {
public:
    explicit Reader(Document doc) : doc_(std::move(doc)) {}

    const Section& section(const std::string& name) {
        auto it = doc_.sections.find(name);
        if (it == doc_.sections.end()) fail(0, "missing section [" + name + "]");
        consumed_sections_.insert(name);
        return it->second;
    }

    const Entry& key(const std::string& section_name, const std::string& key) {
        const Section& s = section(section_name);
        auto it = s.find(key);
        if (it == s.end()) {
            fail(doc_.section_lines[section_name], "missing key '" + key + "' in [" + section_name + "]");
        }
        consumed_keys_.insert(section_name + "\n" + key);
        return it->second;
    }

    double number(const std::string& s, const std::string& k) {
        const Entry& e = key(s, k);
        if (!e.value.is_number()) fail(e.line, "'" + k + "' must be a number");
        return e.value.number();
    }

    std::vector<double> numbers(const std::string& s, const std::string& k, std::optional<std::size_t> expected = {}) {
        const Entry& e = key(s, k);
        return as_numbers(e.value, e.line, k, expected);
    }

    const Entry& entry(const std::string& s, const std::string& k) { return key(s, k); }

    static std::vector<double> as_numbers(const Value& v, int line, const std::string& k,
                                          std::optional<std::size_t> expected = {}) {
        if (v.is_number()) fail(line, "'" + k + "' must be a list");
        std::vector<double> out;
        for (const auto& item : v.list()) {
            if (!item.is_number()) fail(line, "'" + k + "' must be a flat list of numbers");
            out.push_back(item.number());
        }
        if (expected && out.size() != *expected) {
            fail(line, "'" + k + "' must have " + std::to_string(*expected) + " entries, found " +
                           std::to_string(out.size()));
        }
        return out;
    }

    void reject_leftovers() const {
        for (const auto& [name, sec] : doc_.sections) {
            const int line = doc_.section_lines.at(name);
            if (!consumed_sections_.count(name)) fail(line, "unknown section [" + name + "]");
            for (const auto& [k, e] : sec) {
                if (!consumed_keys_.count(name + "\n" + k)) fail(e.line, "unknown key '" + k + "' in [" + name + "]");
            }
        }
    }

    const Document& doc() const { return doc_; }

private:
    Document doc_;
    std::set<std::string> consumed_sections_;
    std::set<std::string> consumed_keys_;
};

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
    Reader r(tokenize(text));
    ProblemSpec spec;

    spec.a = r.number("domain", "a");
    spec.b = r.number("domain", "b");
    spec.xi = r.numbers("domain", "xi");
    const std::size_t n = spec.xi.size();

    spec.rho = r.numbers("rho", "values", n + 1);

    const Entry& pot = r.entry("potential", "pieces");
    if (pot.value.is_number()) fail(pot.line, "'pieces' must be a list of coefficient lists");
    if (pot.value.list().size() != n + 1) {
        fail(pot.line, "'pieces' must have " + std::to_string(n + 1) + " coefficient lists, found " +
                           std::to_string(pot.value.list().size()));
    }
    for (const auto& piece : pot.value.list()) {
        auto coeffs = Reader::as_numbers(piece, pot.line, "pieces");
        if (coeffs.empty()) fail(pot.line, "each potential coefficient list needs at least one entry");
        spec.q.push_back(Polynomial{std::move(coeffs)});
    }

    for (int k = 0; k < 4; ++k) {
        spec.delta[k] = r.number("boundary.left", "delta" + std::to_string(k + 1));
        spec.gamma[k] = r.number("boundary.right", "gamma" + std::to_string(k + 1));
    }

    for (std::size_t i = 1; i <= n; ++i) {
        const std::string name = "transmission." + std::to_string(i);
        TransmissionMatrix tm;
        const auto r1 = r.numbers(name, "row1", 4);
        const auto r2 = r.numbers(name, "row2", 4);
        std::copy(r1.begin(), r1.end(), tm.row1.begin());
        std::copy(r2.begin(), r2.end(), tm.row2.begin());
        spec.trans.push_back(tm);
    }

    r.reject_leftovers();
    return spec;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open problem file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

namespace {

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt(v[i]);
    }
    return out + "]";
}

}  // namespace

std::string format_problem(const ProblemSpec& spec) {
    std::ostringstream os;
    os << "[domain]\n"
       << "a = " << fmt(spec.a) << "\n"
       << "b = " << fmt(spec.b) << "\n"
       << "xi = " << fmt_list(spec.xi) << "\n\n"
       << "[rho]\nvalues = " << fmt_list(spec.rho) << "\n\n"
       << "[potential]\npieces = [";
    for (std::size_t s = 0; s < spec.q.size(); ++s) {
        if (s) os << ", ";
        os << fmt_list(spec.q[s].coefficients);
    }
    os << "]\n\n[boundary.left]\n";
    for (int k = 0; k < 4; ++k) os << "delta" << k + 1 << " = " << fmt(spec.delta[k]) << "\n";
    os << "\n[boundary.right]\n";
    for (int k = 0; k < 4; ++k) os << "gamma" << k + 1 << " = " << fmt(spec.gamma[k]) << "\n";
    for (std::size_t i = 0; i < spec.trans.size(); ++i) {
        const auto& tm = spec.trans[i];
        os << "\n[transmission." << i + 1 << "]\n"
           << "row1 = " << fmt_list({tm.row1.begin(), tm.row1.end()}) << "\n"
           << "row2 = " << fmt_list({tm.row2.begin(), tm.row2.end()}) << "\n";
    }
    return os.str();
}

}  // namespace bvtp
