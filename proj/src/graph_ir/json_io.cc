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

#include "opbench/json_io.h"

#include <fstream>
#include <sstream>

#include "opbench/errors.h"

namespace opbench::json_io {

namespace {

std::string ctx(std::string_view context, std::string_view detail) {
  std::string out(context);
  out += ": ";
  out += detail;
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for '" + path + "'");
}

Json parse_text(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw SchemaError(ctx(what, std::string("malformed JSON at byte ") +
                                    std::to_string(e.byte) + ": " + e.what()));
  }
}

const Json& field(const Json& obj, const char* key, std::string_view context) {
  if (!obj.is_object()) throw SchemaError(ctx(context, "expected an object"));
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(ctx(context, std::string("missing field '") + key + "'"));
  }
  return *it;
}

std::string get_string(const Json& obj, const char* key, std::string_view context) {
  const Json& v = field(obj, key, context);
  if (!v.is_string()) {
    throw SchemaError(ctx(context, std::string("field '") + key + "' must be a string"));
  }
  return v.get<std::string>();
}

std::int64_t get_int(const Json& obj, const char* key, std::string_view context) {
  const Json& v = field(obj, key, context);
  if (!v.is_number_integer()) {
    throw SchemaError(ctx(context, std::string("field '") + key + "' must be an integer"));
  }
  return v.get<std::int64_t>();
}

double get_number(const Json& obj, const char* key, std::string_view context) {
  const Json& v = field(obj, key, context);
  if (!v.is_number()) {
    throw SchemaError(ctx(context, std::string("field '") + key + "' must be a number"));
  }
  return v.get<double>();
}

Dims get_dims(const Json& value, std::string_view context) {
  if (!value.is_array()) throw SchemaError(ctx(context, "expected an integer list"));
  Dims dims;
  dims.reserve(value.size());
  for (const Json& d : value) {
    if (!d.is_number_integer()) throw SchemaError(ctx(context, "non-integer dimension"));
    dims.push_back(d.get<std::int64_t>());
  }
  return dims;
}

Json to_json(const TensorSpec& spec) {
  Json out = Json::object();
  out["dims"] = spec.dims;
  if (spec.strides) out["strides"] = *spec.strides;
  out["dtype"] = std::string(dtype_name(spec.dtype));
  return out;
}

TensorSpec spec_from_json(const Json& value, std::string_view context) {
  TensorSpec spec;
  spec.dims = get_dims(field(value, "dims", context), context);
  if (auto it = value.find("strides"); it != value.end() && !it->is_null()) {
    spec.strides = get_dims(*it, context);
  }
  std::string dtype = get_string(value, "dtype", context);
  auto parsed = parse_dtype(dtype);
  if (!parsed) throw SchemaError(ctx(context, "unknown dtype '" + dtype + "'"));
  spec.dtype = *parsed;
  return spec;
}

Json to_json(const AttrValue& value) {
  return std::visit([](const auto& v) { return Json(v); }, value);
}

AttrValue attr_from_json(const Json& value, std::string_view context) {
  if (value.is_boolean()) return value.get<bool>();
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_number_float()) return value.get<double>();
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    bool all_int = true;
    for (const Json& e : value) {
      if (!e.is_number()) throw SchemaError(ctx(context, "attribute lists must be numeric"));
      all_int = all_int && e.is_number_integer();
    }
    if (all_int) return value.get<std::vector<std::int64_t>>();
    return value.get<std::vector<double>>();
  }
  throw SchemaError(ctx(context, "unsupported attribute value"));
}

Json to_json(const AttrMap& attrs) {
  Json out = Json::object();
  for (const auto& [k, v] : attrs) out[k] = to_json(v);
  return out;
}

AttrMap attrs_from_json(const Json& value, std::string_view context) {
  if (!value.is_object()) throw SchemaError(ctx(context, "attrs must be an object"));
  AttrMap attrs;
  for (auto it = value.begin(); it != value.end(); ++it) {
    attrs.emplace(it.key(), attr_from_json(it.value(), std::string(context) + ".attrs." + it.key()));
  }
  return attrs;
}

Json to_json(const ShapeRecord& record) {
  Json out = Json::object();
  out["op_name"] = record.op_name;
  out["group"] = std::string(group_name(record.group));
  out["input_shapes"] = record.input_shapes;
  out["attrs"] = to_json(record.attrs);
  out["source_model"] = record.source_model;
  out["count"] = record.count;
  if (!record.implementation.empty()) out["implementation"] = record.implementation;
  return out;
}

ShapeRecord record_from_json(const Json& value, std::string_view context) {
  ShapeRecord r;
  r.op_name = get_string(value, "op_name", context);
  std::string g = get_string(value, "group", context);
  auto group = parse_group(g);
  if (!group) throw SchemaError(ctx(context, "unknown group '" + g + "'"));
  r.group = *group;
  const Json& shapes = field(value, "input_shapes", context);
  if (!shapes.is_array()) throw SchemaError(ctx(context, "input_shapes must be a list"));
  for (const Json& s : shapes) r.input_shapes.push_back(get_dims(s, context));
  if (auto it = value.find("attrs"); it != value.end()) r.attrs = attrs_from_json(*it, context);
  if (auto it = value.find("source_model"); it != value.end()) {
    r.source_model = get_string(value, "source_model", context);
  }
  if (auto it = value.find("count"); it != value.end()) r.count = get_int(value, "count", context);
  if (auto it = value.find("implementation"); it != value.end()) {
    r.implementation = get_string(value, "implementation", context);
  }
  return r;
}

std::string canonical(const Json& value) { return value.dump(); }

}  // namespace opbench::json_io
