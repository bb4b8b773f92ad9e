// Copyright 2026 The treelint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xml_scan.hpp"

#include <algorithm>
#include <cstdlib>

#include "errors.hpp"

namespace treelint {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_char(char c) {
    return !is_ws(c) && c != '>' && c != '/' && c != '=' && c != '<' &&
           c != '"' && c != '\'' && c != '?' && c != '!';
}

class Scanner {
public:
    Scanner(std::string_view text, XmlHandler& handler) : text_(text), handler_(handler) {}

    void run() {
        while (pos_ < text_.size()) {
            if (text_[pos_] != '<') {
                scan_text();
                continue;
            }
            if (match("<?")) {
                skip_past("?>", "processing instruction");
            } else if (match("<!--")) {
                skip_past("-->", "comment");
            } else if (match("<![CDATA[")) {
                skip_past("]]>", "CDATA section");
            } else if (match("<!")) {
                skip_doctype();
            } else if (match("</")) {
                scan_close();
            } else {
                scan_open();
            }
        }
        if (!stack_.empty())
            fail("document ended with unclosed element '" + stack_.back() + "'");
        if (!root_seen_) fail("document contains no elements");
    }

private:
    std::string_view text_;
    XmlHandler& handler_;
    size_t pos_ = 0;
    size_t line_ = 1;
    std::vector<std::string> stack_;
    std::vector<XmlAttribute> attrs_;
    bool root_seen_ = false;

    [[noreturn]] void fail(const std::string& msg) {
        throw InputError("XML line " + std::to_string(line_) + ": " + msg);
    }

    void advance(size_t n) {
        for (size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') ++line_;
        }
    }

    // Consumes the literal if it is next; the first character ('<') has
    // already been checked by the caller loop.
    bool match(std::string_view literal) {
        if (text_.substr(pos_, literal.size()) != literal) return false;
        advance(literal.size());
        return true;
    }

    void skip_past(std::string_view terminator, const char* what) {
        size_t end = text_.find(terminator, pos_);
        if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
        advance(end + terminator.size() - pos_);
    }

    // "<!" already consumed: DOCTYPE or similar declaration, possibly with
    // an internal subset in brackets.
    void skip_doctype() {
        bool in_subset = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '[') in_subset = true;
            if (c == ']') in_subset = false;
            if (c == '>' && !in_subset) {
                advance(1);
                return;
            }
            advance(1);
        }
        fail("unterminated declaration");
    }

    void scan_text() {
        size_t start = pos_;
        size_t end = text_.find('<', pos_);
        if (end == std::string_view::npos) end = text_.size();
        if (stack_.empty()) {
            for (size_t i = start; i < end; ++i) {
                if (!is_ws(text_[i])) {
                    advance(i - pos_);
                    fail("text content outside the root element");
                }
            }
        }
        advance(end - pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && is_ws(text_[pos_])) advance(1);
    }

    std::string scan_name(const char* what) {
        size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) advance(1);
        if (pos_ == start) fail(std::string("expected ") + what);
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string decode_entities(std::string_view raw) {
        if (raw.find('&') == std::string_view::npos) return std::string(raw);
        std::string out;
        out.reserve(raw.size());
        size_t i = 0;
        while (i < raw.size()) {
            if (raw[i] != '&') {
                out.push_back(raw[i++]);
                continue;
            }
            size_t semi = raw.find(';', i + 1);
            if (semi == std::string_view::npos) fail("unterminated entity reference");
            std::string name(raw.substr(i + 1, semi - i - 1));
            if (name == "amp") out.push_back('&');
            else if (name == "lt") out.push_back('<');
            else if (name == "gt") out.push_back('>');
            else if (name == "quot") out.push_back('"');
            else if (name == "apos") out.push_back('\'');
            else if (!name.empty() && name[0] == '#') {
                int base = (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) ? 16 : 10;
                const char* digits = name.c_str() + (base == 16 ? 2 : 1);
                char* endp = nullptr;
                long code = std::strtol(digits, &endp, base);
                if (endp == digits || *endp != '\0' || code <= 0 || code > 0x10FFFF)
                    fail("bad character reference '&" + name + ";'");
                append_utf8(out, static_cast<uint32_t>(code));
            } else {
                fail("unknown entity '&" + name + ";'");
            }
            i = semi + 1;
        }
        return out;
    }

    static void append_utf8(std::string& out, uint32_t code) {
        if (code < 0x80) {
            out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (code >> 6)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else if (code < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (code >> 12)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (code >> 18)));
            out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
    }

    std::string scan_attr_value() {
        char quote = text_[pos_];
        if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
        advance(1);
        size_t start = pos_;
        size_t end = text_.find(quote, pos_);
        if (end == std::string_view::npos) fail("unterminated attribute value");
        std::string value = decode_entities(text_.substr(start, end - start));
        advance(end + 1 - pos_);
        return value;
    }

    void scan_open() {
        advance(1);  // '<'
        if (stack_.empty() && root_seen_) fail("multiple root elements");
        std::string name = scan_name("element name");
        attrs_.clear();
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) fail("unterminated start tag '" + name + "'");
            char c = text_[pos_];
            if (c == '>') {
                advance(1);
                root_seen_ = true;
                stack_.push_back(name);
                handler_.start_element(name, attrs_);
                return;
            }
            if (c == '/') {
                advance(1);
                if (pos_ >= text_.size() || text_[pos_] != '>')
                    fail("malformed empty-element tag '" + name + "'");
                advance(1);
                root_seen_ = true;
                handler_.start_element(name, attrs_);
                handler_.end_element();
                return;
            }
            XmlAttribute attr;
            attr.name = scan_name("attribute name");
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != '=')
                fail("attribute '" + attr.name + "' has no value");
            advance(1);
            skip_ws();
            attr.value = scan_attr_value();
            for (const XmlAttribute& seen : attrs_) {
                if (seen.name == attr.name)
                    fail("duplicate attribute '" + attr.name + "' on element '" + name + "'");
            }
            attrs_.push_back(std::move(attr));
        }
    }

    void scan_close() {
        std::string name = scan_name("element name");
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '>') fail("malformed closing tag '" + name + "'");
        advance(1);
        if (stack_.empty()) fail("closing tag '" + name + "' with no open element");
        if (stack_.back() != name)
            fail("closing tag '" + name + "' does not match open element '" + stack_.back() + "'");
        stack_.pop_back();
        handler_.end_element();
    }
};

}  // namespace

void scan_xml(std::string_view text, XmlHandler& handler) {
    Scanner scanner(text, handler);
    scanner.run();
}

}  // namespace treelint
