/*
 * Copyright 2026 The clore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "clore/corpus/task_io.h"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include <spdlog/spdlog.h>

#include "clore/error.h"

namespace clore::corpus {
namespace {

using Json = nlohmann::ordered_json;

// Walks a parsed document, reporting failures with a field path.
class Reader {
 public:
  Reader(std::string_view source, std::vector<std::string>* warnings)
      : source_(source), warnings_(warnings) {}

  [[noreturn]] void Fail(const std::string& path,
                         const std::string& what) const {
    throw FormatError(source_ + ": field '" + path + "': " + what);
  }

  const Json& Field(const Json& obj, const std::string& path,
                    const char* key) const {
    const auto it = obj.find(key);
    if (it == obj.end()) Fail(Join(path, key), "missing");
    return *it;
  }

  std::string String(const Json& j, const std::string& path) const {
    if (!j.is_string()) Fail(path, "expected a string");
    return j.get<std::string>();
  }

  std::size_t Index(const Json& j, const std::string& path) const {
    if (!j.is_number_unsigned()) Fail(path, "expected a non-negative integer");
    return j.get<std::size_t>();
  }

  std::vector<std::string> Strings(const Json& j,
                                   const std::string& path) const {
    if (!j.is_array()) Fail(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(String(j[i], Item(path, i)));
    }
    return out;
  }

  const Json& Array(const Json& j, const std::string& path) const {
    if (!j.is_array()) Fail(path, "expected an array");
    return j;
  }

  const Json& Object(const Json& j, const std::string& path) const {
    if (!j.is_object()) Fail(path, "expected an object");
    return j;
  }

  void WarnUnknown(const Json& obj, const std::string& path,
                   std::initializer_list<const char*> known) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (ok) continue;
      std::string msg =
          source_ + ": ignoring unknown field '" + Join(path, it.key()) + "'";
      spdlog::warn("{}", msg);
      if (warnings_ != nullptr) warnings_->push_back(std::move(msg));
    }
  }

  static std::string Join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
  static std::string Item(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
  }

 private:
  std::string source_;
  std::vector<std::string>* warnings_;
};

Json Parse(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string(source) + ": " + e.what());
  }
}

ExplanationRecord ReadExplanation(const Reader& r, const Json& j,
                                  const std::string& path) {
  r.Object(j, path);
  r.WarnUnknown(j, path,
                {"class", "text", "keyword_span", "quantifier", "rule",
                 "compositional"});
  ExplanationRecord e;
  e.class_id = r.String(r.Field(j, path, "class"), Reader::Join(path, "class"));
  e.text = r.String(r.Field(j, path, "text"), Reader::Join(path, "text"));
  if (const auto it = j.find("compositional"); it != j.end() && !it->is_null()) {
    if (!it->is_boolean()) {
      r.Fail(Reader::Join(path, "compositional"), "expected true or false");
    }
    e.compositional = it->get<bool>();
  }
  if (const auto it = j.find("keyword_span"); it != j.end()) {
    const std::string sp = Reader::Join(path, "keyword_span");
    if (!it->is_array() || it->size() != 2) {
      r.Fail(sp, "expected [begin, end]");
    }
    e.keyword_span = KeywordSpan{r.Index((*it)[0], Reader::Item(sp, 0)),
                                 r.Index((*it)[1], Reader::Item(sp, 1))};
  }
  if (const auto it = j.find("quantifier"); it != j.end()) {
    e.quantifier = r.String(*it, Reader::Join(path, "quantifier"));
  }
  if (const auto it = j.find("rule"); it != j.end()) {
    const std::string rp = Reader::Join(path, "rule");
    r.Object(*it, rp);
    r.WarnUnknown(*it, rp, {"template", "predicates"});
    Rule rule;
    const std::string tp = Reader::Join(rp, "template");
    try {
      rule.tmpl = templates::ParseTemplate(r.String(r.Field(*it, rp, "template"), tp));
    } catch (const InvalidArgument& ex) {
      r.Fail(tp, ex.what());
    }
    const std::string pp = Reader::Join(rp, "predicates");
    const auto& preds = r.Array(r.Field(*it, rp, "predicates"), pp);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const std::string ip = Reader::Item(pp, i);
      r.Object(preds[i], ip);
      r.WarnUnknown(preds[i], ip, {"column", "value"});
      rule.predicates.push_back(
          {r.String(r.Field(preds[i], ip, "column"), Reader::Join(ip, "column")),
           r.String(r.Field(preds[i], ip, "value"), Reader::Join(ip, "value"))});
    }
    e.rule = std::move(rule);
  }
  return e;
}

}  // namespace

std::string TaskToJson(const TaskSpec& task) {
  Json j;
  j["task_id"] = task.task_id;
  j["split"] = std::string(SplitName(task.split));
  j["columns"] = task.columns;
  j["classes"] = task.classes;
  Json rows = Json::array();
  for (const auto& row : task.rows) {
    rows.push_back(Json{{"values", row.values}, {"label", row.label}});
  }
  j["rows"] = std::move(rows);
  Json expls = Json::array();
  for (const auto& e : task.explanations) {
    Json je;
    je["class"] = e.class_id;
    je["text"] = e.text;
    if (e.keyword_span) {
      je["keyword_span"] = {e.keyword_span->begin, e.keyword_span->end};
    }
    if (e.quantifier) je["quantifier"] = *e.quantifier;
    if (e.rule) {
      Json preds = Json::array();
      for (const auto& p : e.rule->predicates) {
        preds.push_back(Json{{"column", p.column}, {"value", p.value}});
      }
      je["rule"] = Json{{"template", e.rule->tmpl.compact()},
                        {"predicates", std::move(preds)}};
    }
    if (e.compositional) je["compositional"] = *e.compositional;
    expls.push_back(std::move(je));
  }
  j["explanations"] = std::move(expls);
  return j.dump(2) + "\n";
}

TaskSpec TaskFromJson(std::string_view json, std::string_view source,
                      std::vector<std::string>* warnings) {
  const Json j = Parse(json, source);
  const Reader r(source, warnings);
  r.Object(j, "<root>");
  r.WarnUnknown(j, "",
                {"task_id", "split", "columns", "classes", "rows",
                 "explanations"});
  TaskSpec t;
  t.task_id = r.String(r.Field(j, "", "task_id"), "task_id");
  if (const auto it = j.find("split"); it != j.end()) {
    try {
      t.split = ParseSplit(r.String(*it, "split"));
    } catch (const InvalidArgument& e) {
      r.Fail("split", e.what());
    }
  }
  t.columns = r.Strings(r.Field(j, "", "columns"), "columns");
  t.classes = r.Strings(r.Field(j, "", "classes"), "classes");
  const auto& rows = r.Array(r.Field(j, "", "rows"), "rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string p = Reader::Item("rows", i);
    r.Object(rows[i], p);
    r.WarnUnknown(rows[i], p, {"values", "label"});
    RowExample row;
    row.values = r.Strings(r.Field(rows[i], p, "values"), Reader::Join(p, "values"));
    row.label = r.String(r.Field(rows[i], p, "label"), Reader::Join(p, "label"));
    t.rows.push_back(std::move(row));
  }
  const auto& expls = r.Array(r.Field(j, "", "explanations"), "explanations");
  for (std::size_t i = 0; i < expls.size(); ++i) {
    t.explanations.push_back(
        ReadExplanation(r, expls[i], Reader::Item("explanations", i)));
  }
  try {
    t.Validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string(source) + ": " + e.what());
  }
  return t;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw FormatError(path.string() + ": write failed");
}

TaskSpec LoadTask(const std::filesystem::path& path,
                  std::vector<std::string>* warnings) {
  return TaskFromJson(ReadFile(path), path.string(), warnings);
}

void SaveTask(const std::filesystem::path& path, const TaskSpec& task) {
  WriteFile(path, TaskToJson(task));
}

std::vector<TaskSpec> LoadSuite(const std::filesystem::path& manifest,
                                std::vector<std::string>* warnings) {
  const std::string source = manifest.string();
  const Json j = Parse(ReadFile(manifest), source);
  const Reader r(source, warnings);
  r.Array(j, "<root>");
  std::vector<TaskSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = Reader::Item("", i);
    r.Object(j[i], p);
    r.WarnUnknown(j[i], p, {"path", "split"});
    const std::filesystem::path rel =
        r.String(r.Field(j[i], p, "path"), Reader::Join(p, "path"));
    TaskSpec t = LoadTask(manifest.parent_path() / rel, warnings);
    try {
      t.split = ParseSplit(
          r.String(r.Field(j[i], p, "split"), Reader::Join(p, "split")));
    } catch (const InvalidArgument& e) {
      r.Fail(Reader::Join(p, "split"), e.what());
    }
    out.push_back(std::move(t));
  }
  return out;
}

void SaveSuite(const std::filesystem::path& dir,
               std::span<const TaskSpec> tasks) {
  Json manifest = Json::array();
  for (const auto& t : tasks) {
    const std::string rel = "tasks/" + t.task_id + ".json";
    SaveTask(dir / rel, t);
    manifest.push_back(
        Json{{"path", rel}, {"split", std::string(SplitName(t.split))}});
  }
  WriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace clore::corpus
