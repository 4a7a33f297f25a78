/* Copyright 2026 The opbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef OPBENCH_JSON_IO_H_
#define OPBENCH_JSON_IO_H_

// JSON conversion helpers shared by the file formats. Internal to the
// library and its tests; the public headers stay JSON-free.

#include <string>
#include <string_view>

#include "json.hpp"
#include "opbench/graph.h"

namespace opbench::json_io {

using Json = nlohmann::json;

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// Throws SchemaError with the offending text position.
Json parse_text(std::string_view text, std::string_view what);

// Field accessors that throw SchemaError("<context>: ...") on absence or
// type mismatch.
const Json& field(const Json& obj, const char* key, std::string_view context);
std::string get_string(const Json& obj, const char* key, std::string_view context);
std::int64_t get_int(const Json& obj, const char* key, std::string_view context);
double get_number(const Json& obj, const char* key, std::string_view context);
Dims get_dims(const Json& value, std::string_view context);

Json to_json(const TensorSpec& spec);
TensorSpec spec_from_json(const Json& value, std::string_view context);

Json to_json(const AttrValue& value);
AttrValue attr_from_json(const Json& value, std::string_view context);
Json to_json(const AttrMap& attrs);
AttrMap attrs_from_json(const Json& value, std::string_view context);

Json to_json(const ShapeRecord& record);
ShapeRecord record_from_json(const Json& value, std::string_view context);

// Canonical text: sorted keys, no insignificant whitespace.
std::string canonical(const Json& value);

}  // namespace opbench::json_io

#endif  // OPBENCH_JSON_IO_H_
