// Copyright 2026 The ptsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ptsim/optics/circuit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ptsim::optics {

namespace {

std::string join_expected(const std::vector<std::string> &e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += i + 1 == e.size() ? " or " : ", ";
        s += e[i];
    }
    return s;
}

enum class Tok { IDENT, NUMBER, AT, EQUALS, NEWLINE, END, BAD };

struct Token {
    Tok kind;
    std::string text;
    int line, column;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
        int line = line_, col = col_;
        if (pos_ >= src_.size()) return {Tok::END, "end of input", line, col};
        char c = src_[pos_];
        if (c == '\n') {
            advance();
            return {Tok::NEWLINE, "end of line", line, col};
        }
        if (c == '@') {
            advance();
            return {Tok::AT, "'@'", line, col};
        }
        if (c == '=') {
            advance();
            return {Tok::EQUALS, "'='", line, col};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            std::size_t start = pos_;
            advance();
            while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
                advance();
            return {Tok::NUMBER, std::string(src_.substr(start, pos_ - start)), line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '-'))
                advance();
            return {Tok::IDENT, std::string(src_.substr(start, pos_ - start)), line, col};
        }
        advance();
        return {Tok::BAD, std::string("'") + c + "'", line, col};
    }

  private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

const std::vector<std::string> kElementWords = {"hwp", "qwp", "polarizer", "calcite", "semihwp", "dichroic", "detector"};
const std::vector<std::string> kAttrTail = {"'path'", "'label'", "comment", "end of line"};

class Parser {
  public:
    explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

    Circuit parse() {
        Circuit c;
        while (tok_.kind != Tok::END) {
            if (tok_.kind == Tok::NEWLINE) {
                shift();
                continue;
            }
            c.elements.push_back(element());
            if (tok_.kind == Tok::NEWLINE) {
                shift();
            } else if (tok_.kind != Tok::END) {
                fail(kAttrTail);
            }
        }
        return c;
    }

  private:
    [[noreturn]] void fail(std::vector<std::string> expected) {
        throw ParseError(tok_.line, tok_.column, tok_.text, std::move(expected));
    }

    void shift() { tok_ = lex_.next(); }

    OpticalElement element() {
        OpticalElement e;
        e.line = tok_.line;
        if (tok_.kind != Tok::IDENT) fail(quoted(kElementWords));
        const std::string w = tok_.text;
        if (w == "hwp") {
            e.kind = ElementKind::HWP;
        } else if (w == "qwp") {
            e.kind = ElementKind::QWP;
        } else if (w == "polarizer") {
            e.kind = ElementKind::POLARIZER;
        } else if (w == "semihwp") {
            e.kind = ElementKind::SEMICIRCLE_HWP;
        } else if (w == "dichroic") {
            e.kind = ElementKind::DICHROIC;
        } else if (w == "detector") {
            e.kind = ElementKind::DETECTOR;
        } else if (w == "calcite") {
            shift();
            if (tok_.kind == Tok::IDENT && tok_.text == "split") {
                e.kind = ElementKind::CALCITE_SPLIT;
            } else if (tok_.kind == Tok::IDENT && tok_.text == "merge") {
                e.kind = ElementKind::CALCITE_MERGE;
            } else {
                fail({"'split'", "'merge'"});
            }
        } else {
            fail(quoted(kElementWords));
        }
        shift();

        if (tok_.kind == Tok::BAD || tok_.kind == Tok::NUMBER || tok_.kind == Tok::EQUALS)
            fail({"'@'", "'path'", "'label'", "comment", "end of line"});
        if (tok_.kind == Tok::AT) {
            int line = tok_.line;
            shift();
            e.angle = number();
            if (!kind_takes_angle(e.kind))
                throw SemanticError(line, std::string(kind_name(e.kind)) + " takes no angle");
        } else if (kind_takes_angle(e.kind)) {
            throw SemanticError(e.line, std::string(kind_name(e.kind)) + " requires an angle '@ <degrees>'");
        }

        bool seen_path = false, seen_label = false;
        while (tok_.kind == Tok::IDENT) {
            if (tok_.text == "path" && !seen_path) {
                seen_path = true;
                shift();
                expect_equals();
                if (tok_.kind == Tok::IDENT && tok_.text == "U") {
                    e.path = PathSelector::UPPER;
                } else if (tok_.kind == Tok::IDENT && tok_.text == "L") {
                    e.path = PathSelector::LOWER;
                } else {
                    fail({"'U'", "'L'"});
                }
                shift();
            } else if (tok_.text == "label" && !seen_label) {
                seen_label = true;
                shift();
                expect_equals();
                if (tok_.kind != Tok::IDENT) fail({"identifier"});
                e.label = tok_.text;
                shift();
            } else {
                std::vector<std::string> exp;
                if (!seen_path) exp.push_back("'path'");
                if (!seen_label) exp.push_back("'label'");
                exp.push_back("comment");
                exp.push_back("end of line");
                fail(exp);
            }
        }
        return e;
    }

    void expect_equals() {
        if (tok_.kind != Tok::EQUALS) fail({"'='"});
        shift();
    }

    double number() {
        if (tok_.kind != Tok::NUMBER) fail({"decimal angle in degrees"});
        const std::string &t = tok_.text;
        const char *b = t.data() + (t[0] == '+' ? 1 : 0);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(b, t.data() + t.size(), v, std::chars_format::fixed);
        if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) fail({"decimal angle in degrees"});
        shift();
        if (tok_.kind == Tok::IDENT && tok_.text == "rad")
            throw ParseError(tok_.line, tok_.column, "'rad' (angles are decimal degrees)", kAttrTail);
        return normalize_angle(v);
    }

    static std::vector<std::string> quoted(const std::vector<std::string> &w) {
        std::vector<std::string> q;
        for (const auto &s : w) q.push_back("'" + s + "'");
        return q;
    }

    Lexer lex_;
    Token tok_;
};

std::string format_angle(double a) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a, std::chars_format::fixed);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

ParseError::ParseError(int line, int column, std::string found, std::vector<std::string> expected)
    : InvalidInput(std::to_string(line) + ":" + std::to_string(column) + ": syntax error: unexpected " + found +
                   ", expected " + join_expected(expected)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

SemanticError::SemanticError(int line, const std::string &what)
    : InvalidInput(line > 0 ? std::to_string(line) + ": " + what : what), line_(line) {}

std::string_view kind_name(ElementKind k) {
    switch (k) {
        case ElementKind::HWP: return "hwp";
        case ElementKind::QWP: return "qwp";
        case ElementKind::POLARIZER: return "polarizer";
        case ElementKind::CALCITE_SPLIT: return "calcite split";
        case ElementKind::CALCITE_MERGE: return "calcite merge";
        case ElementKind::SEMICIRCLE_HWP: return "semihwp";
        case ElementKind::DICHROIC: return "dichroic";
        case ElementKind::DETECTOR: return "detector";
    }
    return "?";
}

bool kind_takes_angle(ElementKind k) {
    return k == ElementKind::HWP || k == ElementKind::QWP || k == ElementKind::POLARIZER ||
           k == ElementKind::SEMICIRCLE_HWP;
}

double normalize_angle(double deg) {
    double a = std::fmod(deg, 180.0);
    if (a < 0.0) a += 180.0;
    if (a >= 180.0) a = 0.0;
    return a + 0.0;
}

Circuit parse_circuit(std::string_view source) {
    Circuit c = Parser(source).parse();
    validate(c);
    return c;
}

Circuit load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open circuit file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_circuit(ss.str());
}

void validate(const Circuit &c) {
    std::set<std::string> labels;
    for (const auto &e : c.elements) {
        if (e.angle.has_value() != kind_takes_angle(e.kind))
            throw SemanticError(e.line, std::string(kind_name(e.kind)) +
                                            (e.angle ? " takes no angle" : " requires an angle"));
        if (e.angle && (!std::isfinite(*e.angle) || *e.angle < 0.0 || *e.angle >= 180.0))
            throw SemanticError(e.line, "angle outside [0, 180)");
        if (e.kind == ElementKind::SEMICIRCLE_HWP && e.path == PathSelector::BOTH)
            throw SemanticError(e.line, "semihwp needs path=U or path=L");
        if ((e.kind == ElementKind::CALCITE_SPLIT || e.kind == ElementKind::CALCITE_MERGE ||
             e.kind == ElementKind::DICHROIC) &&
            e.path != PathSelector::BOTH)
            throw SemanticError(e.line, std::string(kind_name(e.kind)) + " acts on both paths; remove path=");
        if (!e.label.empty() && !labels.insert(e.label).second)
            throw SemanticError(e.line, (e.kind == ElementKind::DETECTOR ? "duplicate detector label " :
                                                                           "duplicate label ") + e.label);
    }

    // Elements before the first dichroic form the source segment; each
    // dichroic starts an arm that inherits the source's open split.
    std::vector<std::vector<const OpticalElement *>> segments(1);
    for (const auto &e : c.elements) {
        if (e.kind == ElementKind::DICHROIC) {
            segments.emplace_back();
        } else {
            segments.back().push_back(&e);
        }
    }
    auto walk = [](const std::vector<const OpticalElement *> &seg, bool open, int &line) {
        bool detected = false;
        for (const auto *e : seg) {
            line = e->line;
            if (detected) throw SemanticError(e->line, "element after the arm's detector");
            if (e->kind == ElementKind::CALCITE_SPLIT) {
                if (open) throw SemanticError(e->line, "calcite split while path L is already open");
                open = true;
            } else if (e->kind == ElementKind::CALCITE_MERGE) {
                if (!open) throw SemanticError(e->line, "calcite merge without a preceding split");
                open = false;
            } else if (e->kind == ElementKind::DETECTOR) {
                if (e->path == PathSelector::LOWER) open = false;
                detected = true;
            }
        }
        return open;
    };
    int line = 0;
    bool source_open = walk(segments[0], false, line);
    if (segments.size() == 1 && source_open) throw SemanticError(line, "unterminated path L");
    for (std::size_t k = 1; k < segments.size(); ++k) {
        if (walk(segments[k], source_open, line)) throw SemanticError(line, "unterminated path L");
    }
}

std::string print_circuit(const Circuit &c) {
    std::string out;
    for (const auto &e : c.elements) {
        out += kind_name(e.kind);
        if (e.angle) out += " @ " + format_angle(*e.angle);
        if (e.path == PathSelector::UPPER) out += " path=U";
        if (e.path == PathSelector::LOWER) out += " path=L";
        if (!e.label.empty()) out += " label=" + e.label;
        out += '\n';
    }
    return out;
}

}  // namespace ptsim::optics
