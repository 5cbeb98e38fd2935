// Copyright 2026 The padic-radii Authors
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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padic/document.hpp"

namespace fs = std::filesystem;
using padic::Json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) padic::fail("cli", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) padic::fail("cli", "cannot write '" + path.string() + "'");
  out << text;
}

std::string task_stem(size_t index, const std::string& kind) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "task%03zu", index);
  return std::string(buf) + "_" + kind;
}

// Pull the exact-knot CSV blocks back out of the report and write them as
// individual files; the SVG renderings are derived from the same blocks.
void export_artifacts(const Json& report, const std::string& csv_dir,
                      const std::string& svg_dir) {
  if (!csv_dir.empty()) fs::create_directories(csv_dir);
  if (!svg_dir.empty()) fs::create_directories(svg_dir);
  for (const Json& t : report.at("tasks")) {
    if (t.at("status") != "ok") continue;
    const size_t index = t.at("index").get<size_t>();
    const std::string kind = t.at("task").get<std::string>();
    const Json& out = t.at("output");
    const std::string stem = task_stem(index, kind);
    if (out.contains("csv")) {
      const std::string csv = out.at("csv").get<std::string>();
      if (!csv_dir.empty()) spit(fs::path(csv_dir) / (stem + ".csv"), csv);
      if (!svg_dir.empty()) {
        padic::Interval dom = padic::parse_interval(out.at("window"), "report window");
        padic::PLFun f = padic::plfun_from_csv(csv, dom, "report csv");
        spit(fs::path(svg_dir) / (stem + ".svg"), padic::svg_plot({{f, false}}));
      }
    }
    if (out.contains("entries")) {
      const Json& entries = out.at("entries");
      for (size_t k = 0; k < entries.size(); ++k) {
        const std::string name = stem + "_entry" + std::to_string(k);
        if (!csv_dir.empty())
          spit(fs::path(csv_dir) / (name + ".csv"),
               entries[k].at("csv").get<std::string>());
        if (!svg_dir.empty()) {
          auto segs = padic::profile_entry_from_json(entries[k], "report entry");
          std::vector<padic::SvgCurve> curves;
          for (const padic::ProfileSegment& s : segs) {
            curves.push_back({s.lo, false});
            if (s.hi) curves.push_back({*s.hi, true});
          }
          spit(fs::path(svg_dir) / (name + ".svg"), padic::svg_plot(curves));
        }
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants of p-adic differential data"};
  app.require_subcommand(1);

  std::string doc_path, out_path, csv_dir, svg_dir;
  bool reproducible = false;

  CLI::App* run = app.add_subcommand("run", "Execute every task in a problem document");
  run->add_option("document", doc_path, "Problem document (JSON)")->required();
  run->add_option("--out", out_path, "Write the report here instead of stdout");
  run->add_option("--csv-dir", csv_dir, "Directory for per-task CSV exports");
  run->add_option("--svg-dir", svg_dir, "Directory for per-task SVG plots");
  run->add_flag("--reproducible", reproducible, "Suppress the timestamp for byte-stable output");

  std::string check_path;
  CLI::App* check = app.add_subcommand("check", "Validate a problem document without running it");
  check->add_option("document", check_path, "Problem document (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      padic::ProblemDocument doc = padic::load_document_text(slurp(check_path));
      std::cout << "ok: " << doc.tasks.size() << " task(s), p = " << doc.p << "\n";
      return 0;
    }
    padic::ProblemDocument doc = padic::load_document_text(slurp(doc_path));
    Json report = padic::execute_document(doc, reproducible);
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty())
      std::cout << text;
    else
      spit(out_path, text);
    if (!csv_dir.empty() || !svg_dir.empty()) export_artifacts(report, csv_dir, svg_dir);
    return report.at("all_ok").get<bool>() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
