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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace treelint {

struct XmlAttribute {
    std::string name;   // as written, prefix included
    std::string value;  // entity references decoded
};

// Receives element events in document order. Text content, comments,
// processing instructions, CDATA, and the DOCTYPE declaration produce no
// events.
class XmlHandler {
public:
    virtual ~XmlHandler() = default;
    virtual void start_element(const std::string& name, const std::vector<XmlAttribute>& attrs) = 0;
    virtual void end_element() = 0;
};

// Single-pass, non-validating scan over a complete UTF-8 document. The
// caller is expected to supply well-formed XML; violations the scan can see
// cheaply (tag mismatch, truncated document, a second root element, broken
// attribute syntax, unknown entities in attribute values) raise InputError
// with a line number.
void scan_xml(std::string_view text, XmlHandler& handler);

}  // namespace treelint
