#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_map>

#include "lexkg/turtle.hpp"

namespace lexkg::turtle {

using rdf::BlankNode;
using rdf::Iri;
using rdf::Literal;
using rdf::Term;
using rdf::Triple;

namespace {

bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_hex(unsigned char c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }
bool is_ws(unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// PN_CHARS_BASE, approximated for UTF-8: any non-ASCII byte counts as a letter.
bool pn_chars_base(unsigned char c) { return is_alpha(c) || c >= 0x80; }
bool pn_chars_u(unsigned char c) { return pn_chars_base(c) || c == '_'; }
bool pn_chars(unsigned char c) { return pn_chars_u(c) || c == '-' || is_digit(c); }

bool pn_local_escapable(unsigned char c) {
    static constexpr std::string_view chars = "_~.-!$&'()*+,;=/?#@%";
    return chars.find(static_cast<char>(c)) != std::string_view::npos;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool has_scheme(std::string_view s) {
    if (s.empty() || !is_alpha(static_cast<unsigned char>(s[0]))) return false;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (c == ':') return true;
        if (!is_alpha(c) && !is_digit(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return false;
}

// RFC 3986 section 5.2.4.
std::string remove_dot_segments(std::string_view in) {
    std::string input(in);
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.replace(0, 3, "/");
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0 || input == "/..") {
            input = input.size() == 3 ? std::string("/") : input.substr(3);
            const auto cut = output.rfind('/');
            output.erase(cut == std::string::npos ? 0 : cut);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            const std::size_t start = input[0] == '/' ? 1 : 0;
            const auto next = input.find('/', start);
            const auto n = next == std::string::npos ? input.size() : next;
            output.append(input, 0, n);
            input.erase(0, n);
        }
    }
    return output;
}

struct UriParts {
    std::string scheme, authority, path, query, fragment;
    bool has_authority = false, has_query = false, has_fragment = false;
};

UriParts split_uri(std::string_view s) {
    UriParts p;
    if (has_scheme(s)) {
        const auto colon = s.find(':');
        p.scheme = std::string(s.substr(0, colon));
        s.remove_prefix(colon + 1);
    }
    if (const auto hash = s.find('#'); hash != std::string_view::npos) {
        p.has_fragment = true;
        p.fragment = std::string(s.substr(hash + 1));
        s = s.substr(0, hash);
    }
    if (const auto q = s.find('?'); q != std::string_view::npos) {
        p.has_query = true;
        p.query = std::string(s.substr(q + 1));
        s = s.substr(0, q);
    }
    if (s.rfind("//", 0) == 0) {
        p.has_authority = true;
        const auto slash = s.find('/', 2);
        p.authority = std::string(s.substr(2, slash == std::string_view::npos ? s.npos : slash - 2));
        s = slash == std::string_view::npos ? std::string_view{} : s.substr(slash);
    }
    p.path = std::string(s);
    return p;
}

std::string join_uri(const UriParts& p) {
    std::string out = p.scheme + ":";
    if (p.has_authority) out += "//" + p.authority;
    out += p.path;
    if (p.has_query) out += "?" + p.query;
    if (p.has_fragment) out += "#" + p.fragment;
    return out;
}

std::string resolve_reference(const std::string& base, std::string_view ref) {
    const UriParts b = split_uri(base);
    UriParts r = split_uri(ref);
    UriParts t;
    t.scheme = b.scheme;
    if (r.has_authority) {
        t.has_authority = true;
        t.authority = r.authority;
        t.path = remove_dot_segments(r.path);
        t.has_query = r.has_query;
        t.query = r.query;
    } else {
        t.has_authority = b.has_authority;
        t.authority = b.authority;
        if (r.path.empty()) {
            t.path = b.path;
            t.has_query = r.has_query || b.has_query;
            t.query = r.has_query ? r.query : b.query;
        } else {
            if (r.path[0] == '/') {
                t.path = remove_dot_segments(r.path);
            } else {
                std::string merged;
                if (b.has_authority && b.path.empty()) {
                    merged = "/" + r.path;
                } else {
                    const auto slash = b.path.rfind('/');
                    merged = (slash == std::string::npos ? std::string() : b.path.substr(0, slash + 1)) +
                             r.path;
                }
                t.path = remove_dot_segments(merged);
            }
            t.has_query = r.has_query;
            t.query = r.query;
        }
    }
    t.has_fragment = r.has_fragment;
    t.fragment = r.fragment;
    return join_uri(t);
}

/// Character cursor over the whole input; every error is reported with the
/// line and column of an actual input character.
class Cursor {
public:
    explicit Cursor(std::string_view src) : src_(src) {}

    bool eof() const { return pos_ >= src_.size(); }
    unsigned char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
    }
    bool at(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }
    std::size_t pos() const { return pos_; }
    void seek(std::size_t p) { pos_ = p; }
    void advance(std::size_t n = 1) { pos_ = std::min(src_.size(), pos_ + n); }
    std::string_view source() const { return src_; }

    [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }

    [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const {
        if (src_.empty()) throw ParseError(1, 1, message, "");
        if (offset >= src_.size()) offset = src_.size() - 1;
        std::size_t line = 1;
        std::size_t line_start = 0;
        for (std::size_t i = 0; i < offset; ++i) {
            if (src_[i] == '\n') {
                ++line;
                line_start = i + 1;
            }
        }
        std::size_t column = 1;
        for (std::size_t i = line_start; i < offset; ++i)
            if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80) ++column;
        auto line_end = src_.find('\n', offset);
        if (line_end == std::string_view::npos) line_end = src_.size();
        const std::size_t snippet_end = std::min(line_end, offset + 40);
        std::string snippet(src_.substr(offset, snippet_end - offset));
        if (snippet.empty() || snippet == "\r") snippet = "<end of line>";
        throw ParseError(line, column, message, std::move(snippet));
    }

    void expect(char c, const char* what) {
        if (peek() != static_cast<unsigned char>(c) || eof())
            fail(std::string("expected ") + what);
        advance();
    }

    std::uint32_t read_hex(std::size_t digits) {
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            const auto c = peek();
            if (eof() || !is_hex(c)) fail("invalid \\u escape: expected hex digit");
            v = v * 16 + static_cast<std::uint32_t>(is_digit(c) ? c - '0' : (c | 0x20) - 'a' + 10);
            advance();
        }
        if (v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) fail("escape is not a Unicode scalar value");
        return v;
    }

    /// IRIREF body with UCHAR escapes; cursor on '<'.
    std::string read_iriref() {
        const std::size_t start = pos_;
        advance();
        std::string out;
        while (true) {
            if (eof()) fail_at(start, "unterminated IRI");
            const auto c = peek();
            if (c == '>') {
                advance();
                return out;
            }
            if (c == '\\') {
                advance();
                if (peek() == 'u') {
                    advance();
                    append_utf8(out, read_hex(4));
                } else if (peek() == 'U') {
                    advance();
                    append_utf8(out, read_hex(8));
                } else {
                    fail("invalid escape in IRI");
                }
                continue;
            }
            if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
                c == '^' || c == '`')
                fail("character not allowed in IRI");
            out += static_cast<char>(c);
            advance();
        }
    }

    /// Quoted string (short or long form); cursor on the opening quote.
    std::string read_string() {
        const std::size_t start = pos_;
        const char q = static_cast<char>(peek());
        const std::string triple(3, q);
        const bool long_form = at(triple);
        advance(long_form ? 3 : 1);
        std::string out;
        while (true) {
            if (eof()) fail_at(start, "unterminated string literal");
            const auto c = peek();
            if (long_form) {
                if (at(triple)) {
                    advance(3);
                    return out;
                }
            } else if (c == static_cast<unsigned char>(q)) {
                advance();
                return out;
            } else if (c == '\n' || c == '\r') {
                fail("line break in single-quoted string; use a triple-quoted string");
            }
            if (c == '\\') {
                advance();
                const auto e = peek();
                if (eof()) fail_at(start, "unterminated string literal");
                advance();
                switch (e) {
                    case 't': out += '\t'; break;
                    case 'b': out += '\b'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 'f': out += '\f'; break;
                    case '"': out += '"'; break;
                    case '\'': out += '\''; break;
                    case '\\': out += '\\'; break;
                    case 'u': append_utf8(out, read_hex(4)); break;
                    case 'U': append_utf8(out, read_hex(8)); break;
                    default:
                        seek(pos_ - 1);
                        fail("invalid escape sequence in string");
                }
                continue;
            }
            out += static_cast<char>(c);
            advance();
        }
    }

    /// LANGTAG body; cursor after '@'.
    std::string read_langtag() {
        const std::size_t start = pos_;
        while (is_alpha(peek()) || is_digit(peek()) || peek() == '-') advance();
        std::string tag(src_.substr(start, pos_ - start));
        if (!Literal::is_valid_language(tag)) fail_at(start, "invalid language tag");
        return tag;
    }

    /// BLANK_NODE_LABEL after "_:".
    std::string read_blank_label() {
        const std::size_t start = pos_;
        if (!(pn_chars_u(peek()) || is_digit(peek())) || eof()) fail("invalid blank node label");
        advance();
        std::size_t last_good = pos_;
        while (!eof() && (pn_chars(peek()) || peek() == '.')) {
            advance();
            if (src_[pos_ - 1] != '.') last_good = pos_;
        }
        seek(last_good);
        return std::string(src_.substr(start, pos_ - start));
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
};

/// Maps source blank node labels to stored labels. Valid labels are kept;
/// others and anonymous nodes get fresh labels that avoid every label seen in
/// the input.
class BlankScope {
public:
    explicit BlankScope(std::string_view src) {
        for (auto p = src.find("_:"); p != std::string_view::npos; p = src.find("_:", p + 2)) {
            std::size_t e = p + 2;
            while (e < src.size() && (is_alpha(static_cast<unsigned char>(src[e])) ||
                                      is_digit(static_cast<unsigned char>(src[e])) || src[e] == '_'))
                ++e;
            if (e > p + 2) reserved_.emplace(src.substr(p + 2, e - p - 2));
        }
    }

    BlankNode named(const std::string& label) {
        if (auto it = labels_.find(label); it != labels_.end()) return BlankNode(it->second);
        std::string stored = BlankNode::is_valid_label(label) ? label : fresh_label();
        labels_.emplace(label, stored);
        return BlankNode(std::move(stored));
    }

    BlankNode fresh() { return BlankNode(fresh_label()); }

private:
    std::string fresh_label() {
        while (true) {
            std::string candidate = "b" + std::to_string(counter_++);
            if (!reserved_.count(candidate)) {
                reserved_.insert(candidate);
                return candidate;
            }
        }
    }

    std::set<std::string, std::less<>> reserved_;
    std::unordered_map<std::string, std::string> labels_;
    std::size_t counter_ = 0;
};

class TurtleParser {
public:
    TurtleParser(std::string_view src, const ParseOptions& options)
        : cur_(src), blanks_(src), options_(options), prefixes_(options.initial_prefixes) {}

    TurtleDocument run() {
        while (true) {
            skip_ws();
            if (cur_.eof()) break;
            statement();
        }
        TurtleDocument doc;
        for (const auto& t : out_) doc.graph.insert(t);
        doc.graph.prefixes() = prefixes_;
        doc.prefixes = prefixes_;
        doc.base = base_;
        doc.statements = std::move(out_);
        return doc;
    }

private:
    void skip_ws() {
        while (!cur_.eof()) {
            const auto c = cur_.peek();
            if (is_ws(c)) {
                cur_.advance();
            } else if (c == '#') {
                while (!cur_.eof() && cur_.peek() != '\n') cur_.advance();
            } else {
                break;
            }
        }
    }

    bool keyword_ahead(std::string_view word) const {
        const auto src = cur_.source().substr(cur_.pos());
        if (src.size() < word.size()) return false;
        for (std::size_t i = 0; i < word.size(); ++i)
            if ((static_cast<unsigned char>(src[i]) | 0x20) != static_cast<unsigned char>(word[i]))
                return false;
        const auto next = cur_.peek(word.size());
        return !(pn_chars(next) || next == ':' || next == '.');
    }

    void statement() {
        if (cur_.peek() == '@') {
            const std::size_t at = cur_.pos();
            cur_.advance();
            if (cur_.at("prefix") && !pn_chars(cur_.peek(6))) {
                cur_.advance(6);
                prefix_body();
            } else if (cur_.at("base") && !pn_chars(cur_.peek(4))) {
                cur_.advance(4);
                base_body();
            } else {
                cur_.fail_at(at, "unknown directive; expected @prefix or @base");
            }
            skip_ws();
            cur_.expect('.', "'.' after directive");
            return;
        }
        if (keyword_ahead("prefix")) {
            cur_.advance(6);
            prefix_body();
            return;
        }
        if (keyword_ahead("base")) {
            cur_.advance(4);
            base_body();
            return;
        }
        triples();
        skip_ws();
        if (cur_.eof() || cur_.peek() != '.') cur_.fail("expected '.' at end of statement");
        cur_.advance();
    }

    void prefix_body() {
        skip_ws();
        const std::size_t start = cur_.pos();
        std::string label = read_prefix_label();
        if (cur_.peek() != ':' || cur_.eof()) cur_.fail_at(start, "expected prefix name ending in ':'");
        cur_.advance();
        skip_ws();
        if (cur_.peek() != '<') cur_.fail("expected <namespace IRI> in prefix declaration");
        const std::size_t iri_pos = cur_.pos();
        Iri ns = resolve(cur_.read_iriref(), iri_pos);
        prefixes_.set(std::move(label), std::move(ns));
    }

    void base_body() {
        skip_ws();
        if (cur_.peek() != '<') cur_.fail("expected <IRI> in base declaration");
        const std::size_t iri_pos = cur_.pos();
        base_ = resolve(cur_.read_iriref(), iri_pos);
    }

    std::string read_prefix_label() {
        const std::size_t start = cur_.pos();
        if (!pn_chars_base(cur_.peek()) || cur_.eof()) return {};
        cur_.advance();
        std::size_t last_good = cur_.pos();
        while (!cur_.eof() && (pn_chars(cur_.peek()) || cur_.peek() == '.')) {
            cur_.advance();
            if (cur_.source()[cur_.pos() - 1] != '.') last_good = cur_.pos();
        }
        cur_.seek(last_good);
        return std::string(cur_.source().substr(start, cur_.pos() - start));
    }

    Iri resolve(const std::string& text, std::size_t at) {
        std::string absolute = text;
        if (!has_scheme(text)) {
            if (!base_) cur_.fail_at(at, "relative IRI <" + text + "> without @base");
            absolute = resolve_reference(base_->str(), text);
        }
        if (!Iri::is_valid(absolute)) cur_.fail_at(at, "invalid IRI <" + absolute + ">");
        return Iri(std::move(absolute));
    }

    /// PNAME_NS PN_LOCAL?; cursor on the first prefix character or ':'.
    Iri prefixed_name() {
        const std::size_t start = cur_.pos();
        std::string label = read_prefix_label();
        if (cur_.peek() != ':' || cur_.eof()) cur_.fail_at(start, "expected a prefixed name, IRI or literal");
        cur_.advance();
        std::string local;
        std::size_t good_pos = cur_.pos();
        std::size_t good_len = 0;
        bool first = true;
        while (!cur_.eof()) {
            const auto c = cur_.peek();
            if (c == '\\') {
                if (!pn_local_escapable(cur_.peek(1))) cur_.fail("invalid escape in local name");
                local += static_cast<char>(cur_.peek(1));
                cur_.advance(2);
                good_pos = cur_.pos();
                good_len = local.size();
            } else if (c == '%') {
                if (!is_hex(cur_.peek(1)) || !is_hex(cur_.peek(2))) cur_.fail("invalid percent escape in local name");
                local.append(cur_.source().substr(cur_.pos(), 3));
                cur_.advance(3);
                good_pos = cur_.pos();
                good_len = local.size();
            } else if (pn_chars_u(c) || is_digit(c) || c == ':' || (!first && (c == '-' || c == '.'))) {
                local += static_cast<char>(c);
                cur_.advance();
                if (c != '.') {
                    good_pos = cur_.pos();
                    good_len = local.size();
                }
            } else {
                break;
            }
            first = false;
        }
        cur_.seek(good_pos);
        local.resize(good_len);
        auto ns = prefixes_.find(label);
        if (!ns) cur_.fail_at(start, "undefined prefix '" + label + ":'");
        std::string full = ns->str() + local;
        if (!Iri::is_valid(full)) cur_.fail_at(start, "prefixed name expands to invalid IRI <" + full + ">");
        return Iri(std::move(full));
    }

    Iri iri() {
        if (cur_.peek() == '<') {
            const std::size_t at = cur_.pos();
            return resolve(cur_.read_iriref(), at);
        }
        if (options_.allow_variables && (cur_.peek() == '?' || cur_.peek() == '$')) return variable();
        return prefixed_name();
    }

    Iri variable() {
        const std::size_t start = cur_.pos();
        cur_.advance();
        const std::size_t name_start = cur_.pos();
        if (!(cur_.peek() >= 'a' && cur_.peek() <= 'z')) cur_.fail_at(start, "variable names must match [a-z][a-z0-9_]*");
        while ((cur_.peek() >= 'a' && cur_.peek() <= 'z') || is_digit(cur_.peek()) || cur_.peek() == '_')
            cur_.advance();
        if (pn_chars(cur_.peek())) cur_.fail_at(start, "variable names must match [a-z][a-z0-9_]*");
        return Iri(std::string(variable_iri_prefix) +
                   std::string(cur_.source().substr(name_start, cur_.pos() - name_start)));
    }

    void emit(const Term& s, const Iri& p, const Term& o) { out_.emplace_back(s, p, o); }

    void triples() {
        if (cur_.peek() == '[') {
            Term node = blank_node_property_list();
            skip_ws();
            if (cur_.peek() != '.' || cur_.eof()) predicate_object_list(node);
            return;
        }
        Term s = subject();
        skip_ws();
        predicate_object_list(s);
    }

    Term subject() {
        const auto c = cur_.peek();
        if (c == '_' && cur_.peek(1) == ':') return blank_label();
        if (c == '(') return collection();
        if (c == '"' || c == '\'' || is_digit(c) || c == '+' || c == '-')
            cur_.fail("literal not allowed as subject");
        return iri();
    }

    Term blank_label() {
        cur_.advance(2);
        return blanks_.named(cur_.read_blank_label());
    }

    void predicate_object_list(const Term& s) {
        Iri p = verb();
        skip_ws();
        object_list(s, p);
        while (true) {
            skip_ws();
            if (cur_.peek() != ';' || cur_.eof()) return;
            while (cur_.peek() == ';' && !cur_.eof()) {
                cur_.advance();
                skip_ws();
            }
            const auto c = cur_.peek();
            if (cur_.eof() || c == '.' || c == ']') return;
            p = verb();
            skip_ws();
            object_list(s, p);
        }
    }

    Iri verb() {
        if (cur_.eof()) cur_.fail("expected predicate");
        if (cur_.peek() == 'a' && !(pn_chars(cur_.peek(1)) || cur_.peek(1) == ':' || cur_.peek(1) == '.')) {
            cur_.advance();
            return rdf::vocab::rdf_type();
        }
        const auto c = cur_.peek();
        if (c == '"' || c == '\'' || c == '[' || c == '(' || c == '_' || is_digit(c))
            cur_.fail("expected predicate IRI");
        return iri();
    }

    void object_list(const Term& s, const Iri& p) {
        emit(s, p, object());
        while (true) {
            skip_ws();
            if (cur_.peek() != ',' || cur_.eof()) return;
            cur_.advance();
            skip_ws();
            emit(s, p, object());
        }
    }

    Term object() {
        if (cur_.eof()) cur_.fail("expected object");
        const auto c = cur_.peek();
        if (c == '<') return iri();
        if (c == '_' && cur_.peek(1) == ':') return blank_label();
        if (c == '[') return blank_node_property_list();
        if (c == '(') return collection();
        if (c == '"' || c == '\'') return literal();
        if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(cur_.peek(1)))) return numeric();
        if (options_.allow_variables && (c == '?' || c == '$')) return variable();
        if (keyword_ahead("true") && cur_.at("true")) {
            cur_.advance(4);
            return Literal("true", rdf::vocab::xsd_boolean());
        }
        if (keyword_ahead("false") && cur_.at("false")) {
            cur_.advance(5);
            return Literal("false", rdf::vocab::xsd_boolean());
        }
        if (pn_chars_base(c) || c == ':') return prefixed_name();
        cur_.fail("expected object");
    }

    struct DepthGuard {
        TurtleParser& p;
        explicit DepthGuard(TurtleParser& parser) : p(parser) {
            if (++p.depth_ > p.options_.max_depth) p.cur_.fail("nesting too deep");
        }
        ~DepthGuard() { --p.depth_; }
    };

    Term blank_node_property_list() {
        DepthGuard guard(*this);
        cur_.advance();
        skip_ws();
        BlankNode node = blanks_.fresh();
        if (cur_.peek() == ']' && !cur_.eof()) {
            cur_.advance();
            return node;
        }
        predicate_object_list(node);
        skip_ws();
        cur_.expect(']', "']' to close blank node property list");
        return node;
    }

    Term collection() {
        DepthGuard guard(*this);
        cur_.advance();
        std::vector<Term> items;
        while (true) {
            skip_ws();
            if (cur_.eof()) cur_.fail("unterminated collection");
            if (cur_.peek() == ')') {
                cur_.advance();
                break;
            }
            items.push_back(object());
        }
        if (items.empty()) return rdf::vocab::rdf_nil();
        std::vector<BlankNode> cells;
        cells.reserve(items.size());
        for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(blanks_.fresh());
        for (std::size_t i = 0; i < items.size(); ++i) {
            emit(cells[i], rdf::vocab::rdf_first(), items[i]);
            if (i + 1 < items.size())
                emit(cells[i], rdf::vocab::rdf_rest(), cells[i + 1]);
            else
                emit(cells[i], rdf::vocab::rdf_rest(), rdf::vocab::rdf_nil());
        }
        return cells.front();
    }

    Term literal() {
        std::string lexical = cur_.read_string();
        if (cur_.peek() == '@' && !cur_.eof()) {
            cur_.advance();
            return Literal::with_language(std::move(lexical), cur_.read_langtag());
        }
        if (cur_.at("^^")) {
            cur_.advance(2);
            const std::size_t at = cur_.pos();
            Iri dt = iri();
            if (dt == rdf::vocab::rdf_lang_string()) cur_.fail_at(at, "rdf:langString requires a language tag");
            return Literal(std::move(lexical), std::move(dt));
        }
        return Literal(std::move(lexical));
    }

    Term numeric() {
        const std::size_t start = cur_.pos();
        if (cur_.peek() == '+' || cur_.peek() == '-') cur_.advance();
        std::size_t int_digits = 0;
        while (is_digit(cur_.peek())) {
            cur_.advance();
            ++int_digits;
        }
        std::size_t frac_digits = 0;
        bool dot = false;
        auto exponent_ahead = [&](std::size_t off) {
            const auto e = cur_.peek(off);
            if (e != 'e' && e != 'E') return false;
            const auto n = cur_.peek(off + 1);
            return is_digit(n) || ((n == '+' || n == '-') && is_digit(cur_.peek(off + 2)));
        };
        if (cur_.peek() == '.' && (is_digit(cur_.peek(1)) || (int_digits > 0 && exponent_ahead(1)))) {
            dot = true;
            cur_.advance();
            while (is_digit(cur_.peek())) {
                cur_.advance();
                ++frac_digits;
            }
        }
        if (int_digits == 0 && frac_digits == 0) cur_.fail_at(start, "invalid numeric literal");
        Iri dt = dot ? rdf::vocab::xsd_decimal() : rdf::vocab::xsd_integer();
        if (exponent_ahead(0)) {
            cur_.advance(2);
            while (is_digit(cur_.peek())) cur_.advance();
            dt = rdf::vocab::xsd_double();
        }
        if (pn_chars_base(cur_.peek()) || cur_.peek() == '_')
            cur_.fail("invalid character after numeric literal");
        return Literal(std::string(cur_.source().substr(start, cur_.pos() - start)), std::move(dt));
    }

    Cursor cur_;
    BlankScope blanks_;
    ParseOptions options_;
    rdf::PrefixMap prefixes_;
    std::optional<Iri> base_;
    std::vector<Triple> out_;
    std::size_t depth_ = 0;
};

class NTriplesParser {
public:
    explicit NTriplesParser(std::string_view src) : cur_(src), blanks_(src) {}

    rdf::Graph run() {
        rdf::Graph g;
        while (!cur_.eof()) {
            skip_blanks();
            if (cur_.eof()) break;
            const auto c = cur_.peek();
            if (c == '\n' || c == '\r') {
                cur_.advance();
                continue;
            }
            if (c == '#') {
                skip_comment();
                continue;
            }
            Term s = subject();
            skip_blanks();
            Iri p = iri();
            skip_blanks();
            Term o = object();
            skip_blanks();
            if (cur_.eof() || cur_.peek() != '.') cur_.fail("expected '.' at end of triple");
            cur_.advance();
            skip_blanks();
            if (cur_.peek() == '#') skip_comment();
            if (!cur_.eof() && cur_.peek() != '\n' && cur_.peek() != '\r')
                cur_.fail("unexpected content after triple");
            g.insert(Triple(std::move(s), std::move(p), std::move(o)));
        }
        return g;
    }

private:
    void skip_blanks() {
        while (!cur_.eof() && (cur_.peek() == ' ' || cur_.peek() == '\t')) cur_.advance();
    }
    void skip_comment() {
        while (!cur_.eof() && cur_.peek() != '\n') cur_.advance();
    }

    Iri iri() {
        if (cur_.eof() || cur_.peek() != '<') cur_.fail("expected <IRI>");
        const std::size_t at = cur_.pos();
        std::string text = cur_.read_iriref();
        if (!Iri::is_valid(text)) cur_.fail_at(at, "invalid absolute IRI <" + text + ">");
        return Iri(std::move(text));
    }

    Term subject() {
        if (cur_.peek() == '_' && cur_.peek(1) == ':') {
            cur_.advance(2);
            return blanks_.named(cur_.read_blank_label());
        }
        return iri();
    }

    Term object() {
        if (cur_.peek() == '"') {
            if (cur_.at("\"\"\"")) cur_.fail("long strings are not allowed in N-Triples");
            std::string lexical = cur_.read_string();
            if (cur_.peek() == '@' && !cur_.eof()) {
                cur_.advance();
                return Literal::with_language(std::move(lexical), cur_.read_langtag());
            }
            if (cur_.at("^^")) {
                cur_.advance(2);
                const std::size_t at = cur_.pos();
                Iri dt = iri();
                if (dt == rdf::vocab::rdf_lang_string()) cur_.fail_at(at, "rdf:langString requires a language tag");
                return Literal(std::move(lexical), std::move(dt));
            }
            return Literal(std::move(lexical));
        }
        return subject();
    }

    Cursor cur_;
    BlankScope blanks_;
};

}  // namespace

TurtleDocument parse_turtle(std::string_view text, const ParseOptions& options) {
    return TurtleParser(text, options).run();
}

rdf::Graph parse_ntriples(std::string_view text) { return NTriplesParser(text).run(); }

}  // namespace lexkg::turtle
