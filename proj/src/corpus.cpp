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

#include "corpus.hpp"

#include <algorithm>
#include <charconv>

#include "errors.hpp"
#include "util.hpp"

namespace treelint {

bool is_reserved_token(std::string_view token) {
    return token == kStartToken || token == kEndToken || token == kUnkToken;
}

std::string EntryRef::to_string() const {
    std::string out = tier_name + ":" + std::to_string(ordinal);
    if (!source_id.empty()) out += ":" + source_id;
    return out;
}

EntryRef EntryRef::parse(std::string_view text) {
    size_t first = text.find(':');
    if (first == std::string_view::npos || first == 0)
        throw InputError("malformed entry ref '" + std::string(text) + "' (expected TIER:ordinal)");
    EntryRef ref;
    ref.tier_name = std::string(text.substr(0, first));
    std::string_view rest = text.substr(first + 1);
    size_t second = rest.find(':');
    std::string_view ordinal_text = second == std::string_view::npos ? rest : rest.substr(0, second);
    if (second != std::string_view::npos) ref.source_id = std::string(rest.substr(second + 1));
    auto [ptr, ec] = std::from_chars(ordinal_text.data(), ordinal_text.data() + ordinal_text.size(),
                                     ref.ordinal);
    if (ec != std::errc() || ptr != ordinal_text.data() + ordinal_text.size())
        throw InputError("malformed ordinal in entry ref '" + std::string(text) + "'");
    return ref;
}

namespace {

void validate_token(const std::string& token, const std::string& where) {
    if (token.empty()) throw InputError(where + ": empty token");
    for (char c : token) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw InputError(where + ": token contains whitespace");
    }
    if (is_reserved_token(token))
        throw InputError(where + ": reserved token '" + token + "' is not allowed in a corpus");
}

}  // namespace

TagCorpus::TagCorpus(std::string tier_name, std::vector<TagSentence> sentences)
    : tier_name_(std::move(tier_name)), sentences_(std::move(sentences)) {
    for (size_t i = 0; i < sentences_.size(); ++i) {
        const TagSentence& s = sentences_[i];
        std::string where = "sentence " + s.entry.to_string();
        if (s.entry.tier_name != tier_name_)
            throw InputError(where + ": tier differs from corpus tier '" + tier_name_ + "'");
        if (s.entry.ordinal != i)
            throw InputError(where + ": ordinal out of sequence (expected " + std::to_string(i) + ")");
        for (const std::string& token : s.tokens) {
            validate_token(token, where);
            vocabulary_.insert(token);
        }
    }
}

TagCorpus TagCorpus::from_sentences(std::string tier_name,
                                    std::vector<std::vector<std::string>> token_lists) {
    std::vector<TagSentence> sentences;
    sentences.reserve(token_lists.size());
    for (size_t i = 0; i < token_lists.size(); ++i)
        sentences.push_back(TagSentence{EntryRef{tier_name, i, ""}, std::move(token_lists[i])});
    return TagCorpus(std::move(tier_name), std::move(sentences));
}

std::string tokenize_element(const std::string& name, const std::vector<XmlAttribute>& attrs,
                             AttributePolicy policy, const std::set<std::string>* allowlist) {
    if (policy == AttributePolicy::none || attrs.empty()) return name;

    std::vector<const XmlAttribute*> kept;
    for (const XmlAttribute& attr : attrs) {
        if (allowlist == nullptr || allowlist->count(attr.name)) kept.push_back(&attr);
    }
    if (kept.empty()) return name;
    std::sort(kept.begin(), kept.end(),
              [](const XmlAttribute* a, const XmlAttribute* b) { return a->name < b->name; });

    std::string token = name + "@";
    for (size_t i = 0; i < kept.size(); ++i) {
        if (i > 0) token.push_back(',');
        token += kept[i]->name;
        if (policy == AttributePolicy::names_and_values) {
            token.push_back('=');
            for (char c : kept[i]->value)
                token.push_back(c == ' ' || c == '\t' || c == '\n' || c == '\r' ? '_' : c);
        }
    }
    return token;
}

namespace {

// Strips a namespace prefix: "tei:entry" -> "entry".
std::string local_name(const std::string& name, bool keep_prefix) {
    if (keep_prefix) return name;
    size_t colon = name.find(':');
    return colon == std::string::npos ? name : name.substr(colon + 1);
}

std::string source_id_of(const std::vector<XmlAttribute>& attrs) {
    const XmlAttribute* found = nullptr;
    for (const XmlAttribute& attr : attrs) {
        if (attr.name == "xml:id") {
            found = &attr;
            break;
        }
        if (attr.name == "id" && found == nullptr) found = &attr;
    }
    if (found == nullptr) return "";
    std::string id = found->value;
    for (char& c : id) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') c = '_';
    }
    return id;
}

class ExtractHandler : public XmlHandler {
public:
    explicit ExtractHandler(const TierSpec& tier)
        : tier_(tier),
          allowlist_(tier.attribute_allowlist ? &*tier.attribute_allowlist : nullptr) {}

    void start_element(const std::string& name, const std::vector<XmlAttribute>& attrs) override {
        std::string pname = local_name(name, tier_.keep_prefix);
        if (!frames_.empty()) {
            std::string token = tokenize_element(pname, attrs, tier_.attribute_policy, allowlist_);
            // A nested entry element is itself a repeating unit: enclosing
            // sentences keep its token but never see inside it, exactly as
            // if it were listed for collapsing.
            bool collapse = tier_.collapse_elements.count(pname) > 0 ||
                            pname == tier_.entry_element;
            for (Frame& f : frames_) {
                ++f.depth;
                if (f.skip_from == 0) {
                    f.tokens.push_back(token);
                    if (collapse) f.skip_from = f.depth;
                }
            }
        }
        if (pname == tier_.entry_element) {
            Frame frame;
            frame.ref = EntryRef{tier_.name, next_ordinal_++, source_id_of(attrs)};
            frames_.push_back(std::move(frame));
        }
    }

    void end_element() override {
        if (!frames_.empty() && frames_.back().depth == 0) {
            // This close is the entry element of the innermost frame.
            done_.push_back(TagSentence{std::move(frames_.back().ref), std::move(frames_.back().tokens)});
            frames_.pop_back();
        }
        for (Frame& f : frames_) {
            if (f.skip_from == f.depth) f.skip_from = 0;
            --f.depth;
        }
    }

    TagCorpus finish() {
        if (next_ordinal_ == 0)
            throw InputError("no elements named '" + tier_.entry_element + "' in document (tier '" +
                             tier_.name + "')");
        // Entries finish in close order; nested entries close before their
        // ancestors, so restore document (start) order.
        std::sort(done_.begin(), done_.end(), [](const TagSentence& a, const TagSentence& b) {
            return a.entry.ordinal < b.entry.ordinal;
        });
        return TagCorpus(tier_.name, std::move(done_));
    }

private:
    struct Frame {
        EntryRef ref;
        std::vector<std::string> tokens;
        int depth = 0;      // open descendant elements of this entry
        int skip_from = 0;  // depth of the open collapsed branch, 0 = none
    };

    const TierSpec& tier_;
    const std::set<std::string>* allowlist_;
    std::vector<Frame> frames_;
    std::vector<TagSentence> done_;
    size_t next_ordinal_ = 0;
};

}  // namespace

TagCorpus extract_sentences(std::string_view xml_text, const TierSpec& tier) {
    ExtractHandler handler(tier);
    scan_xml(xml_text, handler);
    return handler.finish();
}

std::string corpus_to_text(const TagCorpus& corpus) {
    std::string out;
    for (const TagSentence& s : corpus.sentences()) {
        out += s.entry.to_string();
        out.push_back('\t');
        out += join(s.tokens);
        out.push_back('\n');
    }
    return out;
}

TagCorpus corpus_from_text(const std::string& text) {
    std::vector<TagSentence> sentences;
    std::string tier_name;
    size_t lineno = 0;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            throw InputError("corpus line " + std::to_string(lineno) + ": CR line ending");
        size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw InputError("corpus line " + std::to_string(lineno) + ": missing TAB after entry ref");
        TagSentence sentence;
        try {
            sentence.entry = EntryRef::parse(line.substr(0, tab));
        } catch (const InputError& e) {
            throw InputError("corpus line " + std::to_string(lineno) + ": " + e.what());
        }
        sentence.tokens = split_ws(line.substr(tab + 1));
        if (tier_name.empty()) tier_name = sentence.entry.tier_name;
        sentences.push_back(std::move(sentence));
    }
    if (sentences.empty()) throw InputError("corpus file is empty");
    try {
        return TagCorpus(std::move(tier_name), std::move(sentences));
    } catch (const InputError& e) {
        throw InputError(std::string("corpus file: ") + e.what());
    }
}

}  // namespace treelint
