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

#pragma once

#include <atomic>
#include <cstdlib>
#include <ctime>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "padic/artin_schreier.hpp"
#include "padic/berkovich.hpp"
#include "padic/diffmod.hpp"
#include "padic/newton.hpp"
#include "padic/serialize.hpp"
#include "padic/valuation.hpp"

// Problem documents: a JSON description of a batch of independent tasks,
// executed concurrently, reported in input order.  Reports are deterministic
// byte for byte once the timestamp is suppressed.

namespace padic {

struct RadiiTask {
  CyclicOperator op;
  Interval window;
};

struct DworkTask {
  ValuedPoly r;
  Interval window;
};

struct B1Task {
  ASParameter u;
  Interval dom;
};

struct B1PathTask {
  ASParameter u;
  HahnElement z;
  LogValue s_end;
};

struct PrepareTask {
  ASParameter u;
};

struct NewtonTask {
  std::vector<NewtonPoint> points;
};

struct DescendTask {
  RadiusMultiset in;
};

struct ZariskiTask {
  std::vector<LogValue> c;
  long r = 1;
};

struct BerkovichTask {
  std::string op;  // classify | dominates | meet | path_point | union
  std::optional<BerkovichPoint> alpha, beta;
  std::optional<ExtLogValue> s;
  std::vector<PolyConstraint> constraints;
  FqField field;
};

struct InvariantsTask {
  WeightVector weights;
  std::vector<ExtensionType> extensions;
};

struct CheckTask {
  RadiiProfile profile;
  bool reaches_zero = false;
};

using Task = std::variant<RadiiTask, DworkTask, B1Task, B1PathTask, PrepareTask, NewtonTask,
                          DescendTask, ZariskiTask, BerkovichTask, InvariantsTask, CheckTask>;

struct TaskEntry {
  std::string kind;
  Task task;
};

struct ProblemDocument {
  unsigned long p = 2;
  std::vector<TaskEntry> tasks;
};

// ---------------------------------------------------------------------------
// Loading

namespace loader {

inline ValuedPoly parse_valued_poly(const Json& j, const std::string& path) {
  expect(j.is_array(), path, "expected an array of [exp, value] terms");
  std::vector<ValuedPoly::Term> terms;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    const Json& t = j[i];
    expect(t.is_array() && t.size() == 2, at, "expected [exp, value]");
    long long e = parse_int(t[0], at + "[0]");
    terms.push_back({static_cast<long>(e), parse_log_value(t[1], at + "[1]")});
  }
  try {
    return ValuedPoly(std::move(terms));
  } catch (const std::invalid_argument& e) {
    fail("document", path + ": " + e.what());
  }
}

inline FqField parse_field(const Json& j, unsigned long p, const std::string& path) {
  long long m = 1;
  if (const Json* f = opt_field(j, "field_degree")) {
    m = parse_int(*f, path + ".field_degree");
    expect(m >= 1 && m <= 8, path + ".field_degree", "expected a degree in [1, 8]");
  }
  return FqField(static_cast<unsigned>(p), static_cast<unsigned>(m));
}

inline ASParameter parse_parameter(const Json& j, const FqField& F, const std::string& path) {
  expect(j.is_array(), path, "expected an array of [exp, series] terms");
  std::vector<std::pair<long, HahnElement>> coeffs;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    const Json& t = j[i];
    expect(t.is_array() && t.size() == 2, at, "expected [exp, series]");
    long long e = parse_int(t[0], at + "[0]");
    coeffs.emplace_back(static_cast<long>(e), parse_hahn(t[1], F, at + "[1]"));
  }
  try {
    return ASParameter(F, std::move(coeffs));
  } catch (const std::invalid_argument& e) {
    fail("document", path + ": " + e.what());
  }
}

inline Task parse_task(const Json& j, unsigned long p, const std::string& path) {
  const Json& kind_j = field(j, "task", path);
  expect(kind_j.is_string(), path + ".task", "expected a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "radii") {
    const Json& cj = field(j, "coeffs", path);
    expect(cj.is_array() && cj.size() >= 2, path + ".coeffs",
           "expected at least two coefficient slots");
    std::vector<std::optional<ValuedPoly>> coeffs;
    for (size_t i = 0; i < cj.size(); ++i) {
      const std::string at = path + ".coeffs[" + std::to_string(i) + "]";
      if (cj[i].is_null())
        coeffs.emplace_back();
      else
        coeffs.emplace_back(parse_valued_poly(cj[i], at));
    }
    Interval window = parse_interval(field(j, "window", path), path + ".window");
    try {
      return RadiiTask{make_cyclic(p, std::move(coeffs)), std::move(window)};
    } catch (const std::invalid_argument& e) {
      fail("document", path + ": " + e.what());
    }
  }
  if (kind == "dwork") {
    ValuedPoly r = parse_valued_poly(field(j, "r", path), path + ".r");
    Interval window = parse_interval(field(j, "interval", path), path + ".interval");
    return DworkTask{std::move(r), std::move(window)};
  }
  if (kind == "b1") {
    FqField F = parse_field(j, p, path);
    ASParameter u = parse_parameter(field(j, "u", path), F, path + ".u");
    Interval dom = parse_interval(field(j, "interval", path), path + ".interval");
    return B1Task{std::move(u), std::move(dom)};
  }
  if (kind == "b1path") {
    FqField F = parse_field(j, p, path);
    ASParameter u = parse_parameter(field(j, "u", path), F, path + ".u");
    HahnElement z = parse_hahn(field(j, "z", path), F, path + ".z");
    LogValue s_end = parse_log_value(field(j, "s_end", path), path + ".s_end");
    return B1PathTask{std::move(u), std::move(z), std::move(s_end)};
  }
  if (kind == "prepare") {
    FqField F = parse_field(j, p, path);
    return PrepareTask{parse_parameter(field(j, "u", path), F, path + ".u")};
  }
  if (kind == "newton") {
    const Json& pj = field(j, "points", path);
    expect(pj.is_array() && !pj.empty(), path + ".points", "expected a nonempty array");
    std::vector<NewtonPoint> pts;
    for (size_t i = 0; i < pj.size(); ++i) {
      const std::string at = path + ".points[" + std::to_string(i) + "]";
      const Json& t = pj[i];
      expect(t.is_array() && t.size() == 2, at, "expected [x, value]");
      pts.push_back({static_cast<long>(parse_int(t[0], at + "[0]")),
                     parse_log_value(t[1], at + "[1]")});
    }
    return NewtonTask{std::move(pts)};
  }
  if (kind == "descend") {
    LogValue r_hat = parse_log_value(field(j, "r_hat", path), path + ".r_hat");
    const Json& vj = field(j, "values", path);
    expect(vj.is_array() && !vj.empty(), path + ".values", "expected a nonempty array");
    std::vector<LogValue> values;
    for (size_t i = 0; i < vj.size(); ++i)
      values.push_back(parse_log_value(vj[i], path + ".values[" + std::to_string(i) + "]"));
    try {
      return DescendTask{make_multiset(p, std::move(r_hat), std::move(values))};
    } catch (const std::invalid_argument& e) {
      fail("document", path + ": " + e.what());
    }
  }
  if (kind == "zariski") {
    const Json& cj = field(j, "c", path);
    expect(cj.is_array() && !cj.empty(), path + ".c", "expected a nonempty array");
    std::vector<LogValue> c;
    for (size_t i = 0; i < cj.size(); ++i)
      c.push_back(parse_log_value(cj[i], path + ".c[" + std::to_string(i) + "]"));
    long long r = parse_int(field(j, "r", path), path + ".r");
    expect(r >= 1 && static_cast<size_t>(r) <= c.size(), path + ".r",
           "expected a rank in [1, len(c)]");
    return ZariskiTask{std::move(c), static_cast<long>(r)};
  }
  if (kind == "berkovich") {
    const Json& oj = field(j, "op", path);
    expect(oj.is_string(), path + ".op", "expected a string");
    const std::string op = oj.get<std::string>();
    expect(op == "classify" || op == "dominates" || op == "meet" || op == "path_point" ||
               op == "union",
           path + ".op",
           "unknown op '" + op + "' (expected classify, dominates, meet, path_point, union)");
    FqField F = parse_field(j, p, path);
    BerkovichTask task{op, std::nullopt, std::nullopt, std::nullopt, {}, F};
    if (op == "union") {
      const Json& cj = field(j, "constraints", path);
      expect(cj.is_array() && !cj.empty(), path + ".constraints", "expected a nonempty array");
      for (size_t i = 0; i < cj.size(); ++i) {
        const std::string at = path + ".constraints[" + std::to_string(i) + "]";
        const Json& c = cj[i];
        const Json& rj = field(c, "roots", at);
        expect(rj.is_array() && !rj.empty(), at + ".roots", "expected a nonempty array");
        std::vector<HahnElement> roots;
        for (size_t k = 0; k < rj.size(); ++k)
          roots.push_back(parse_hahn(rj[k], F, at + ".roots[" + std::to_string(k) + "]"));
        LogValue lead = parse_log_value(field(c, "lead_val", at), at + ".lead_val");
        LogValue bound = parse_log_value(field(c, "bound", at), at + ".bound");
        task.constraints.push_back({std::move(roots), std::move(lead), std::move(bound)});
      }
    } else {
      task.alpha = parse_point(field(j, "alpha", path), F, path + ".alpha");
      if (op == "dominates" || op == "meet")
        task.beta = parse_point(field(j, "beta", path), F, path + ".beta");
      if (op == "path_point")
        task.s = parse_ext_log_value(field(j, "s", path), path + ".s");
    }
    return task;
  }
  if (kind == "invariants") {
    const Json& wj = field(j, "weights", path);
    expect(wj.is_array() && !wj.empty(), path + ".weights", "expected a nonempty array");
    WeightVector w;
    for (size_t i = 0; i < wj.size(); ++i)
      w.push_back(parse_log_value(wj[i], path + ".weights[" + std::to_string(i) + "]"));
    std::vector<ExtensionType> exts;
    if (const Json* ej = opt_field(j, "extensions")) {
      expect(ej->is_array(), path + ".extensions", "expected an array");
      for (size_t i = 0; i < ej->size(); ++i) {
        const std::string at = path + ".extensions[" + std::to_string(i) + "]";
        expect((*ej)[i].is_string(), at, "expected a string");
        const std::string name = (*ej)[i].get<std::string>();
        if (name == "i")
          exts.push_back(ExtensionType::TypeI);
        else if (name == "ii")
          exts.push_back(ExtensionType::TypeII);
        else if (name == "iii")
          exts.push_back(ExtensionType::TypeIII);
        else if (name == "iv")
          exts.push_back(ExtensionType::TypeIV);
        else
          expect(false, at, "unknown extension type '" + name + "' (expected i, ii, iii, iv)");
      }
    }
    return InvariantsTask{std::move(w), std::move(exts)};
  }
  if (kind == "check") {
    const Json& pj = field(j, "profile", path);
    Interval window = parse_interval(field(pj, "window", path + ".profile"),
                                     path + ".profile.window");
    const Json& ej = field(pj, "entries", path + ".profile");
    expect(ej.is_array() && !ej.empty(), path + ".profile.entries", "expected a nonempty array");
    RadiiProfile prof;
    prof.p = p;
    prof.window = window;
    for (size_t i = 0; i < ej.size(); ++i)
      prof.entries.push_back(
          profile_entry_from_json(ej[i], path + ".profile.entries[" + std::to_string(i) + "]"));
    if (const Json* wj = opt_field(pj, "widened"))
      prof.widened = parse_bool(*wj, path + ".profile.widened");
    bool reaches_zero = parse_bool(field(j, "reaches_zero", path), path + ".reaches_zero");
    return CheckTask{std::move(prof), reaches_zero};
  }
  expect(false, path + ".task",
         "unknown task '" + kind +
             "' (expected one of radii, dwork, b1, b1path, prepare, newton, descend, zariski, "
             "berkovich, invariants, check)");
  throw std::logic_error("unreachable");
}

}  // namespace loader

inline ProblemDocument load_document(const Json& j) {
  expect(j.is_object(), "$", "expected a top-level object");
  const Json& ver = field(j, "version", "$");
  expect(ver.is_string() && ver.get<std::string>() == "padic-radii/1", "version",
         "expected \"padic-radii/1\"");
  long long p = parse_int(field(j, "p", "$"), "p");
  expect(p >= 2, "p", "expected a prime");
  for (long long d = 2; d * d <= p; ++d) expect(p % d != 0, "p", "expected a prime");
  const Json& tasks = field(j, "tasks", "$");
  expect(tasks.is_array(), "tasks", "expected an array");
  ProblemDocument doc;
  doc.p = static_cast<unsigned long>(p);
  for (size_t i = 0; i < tasks.size(); ++i) {
    const std::string path = "tasks[" + std::to_string(i) + "]";
    expect(tasks[i].is_object(), path, "expected a task object");
    const Json& kind_j = field(tasks[i], "task", path);
    expect(kind_j.is_string(), path + ".task", "expected a string");
    doc.tasks.push_back({kind_j.get<std::string>(), loader::parse_task(tasks[i], doc.p, path)});
  }
  return doc;
}

inline ProblemDocument load_document_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("document", "malformed JSON");
  return load_document(j);
}

// ---------------------------------------------------------------------------
// Execution

namespace runner {

struct Outcome {
  const char* status;  // ok | fail | indeterminate
  Json body;
};

inline Outcome run(const RadiiTask& t, unsigned long) {
  RadiiProfile prof = radii_profile(t.op, t.window);
  Json entries = Json::array();
  for (const auto& segs : prof.entries) entries.push_back(json_profile_entry(segs));
  return {"ok", Json{{"rank", prof.rank()},
                     {"widened", prof.widened},
                     {"window", json_interval(prof.window)},
                     {"entries", entries}}};
}

inline Outcome run(const DworkTask& t, unsigned long p) {
  PLFun f = dwork_profile(t.r, p, t.window);
  return {"ok", Json{{"window", json_interval(f.domain())}, {"csv", plfun_to_csv(f)}}};
}

inline Outcome run(const B1Task& t, unsigned long) {
  PreparedParameter prep = as_prepare(t.u);
  PLFun f = b1_profile(prep.reduced, t.dom);
  bool trivial = as_is_trivial(prep.reduced, t.dom);
  return {"ok", Json{{"window", json_interval(f.domain())},
                     {"csv", plfun_to_csv(f)},
                     {"trivial", trivial}}};
}

inline Outcome run(const B1PathTask& t, unsigned long) {
  PathProfile pp = b1_along_path(t.u, t.z, t.s_end);
  return {"ok", Json{{"window", json_interval(pp.profile.domain())},
                     {"csv", plfun_to_csv(pp.profile)},
                     {"terminal_slope", json_log_value(pp.terminal_slope)}}};
}

inline Outcome run(const PrepareTask& t, unsigned long) {
  PreparedParameter prep = as_prepare(t.u);
  Json reduced = Json::array();
  for (const auto& [e, c] : prep.reduced.coeffs())
    reduced.push_back(Json::array({e, json_hahn(c)}));
  return {"ok", Json{{"reduced", reduced}, {"dropped", json_hahn(prep.dropped)}}};
}

inline Outcome run(const NewtonTask& t, unsigned long) {
  NewtonPolygon np = newton_polygon(t.points);
  Json vertices = Json::array();
  for (const NewtonPoint& v : np.vertices)
    vertices.push_back(Json::array({v.x, json_log_value(v.y)}));
  Json slopes = Json::array();
  for (const PolygonEdge& e : np.edges)
    slopes.push_back(Json{{"slope", json_log_value(e.slope)}, {"mult", e.mult}});
  return {"ok", Json{{"vertices", vertices}, {"slopes", slopes}}};
}

inline Outcome run(const DescendTask& t, unsigned long) {
  RadiusMultiset out = descendant_multiset(t.in);
  Json values = Json::array();
  for (const LogValue& v : out.values) values.push_back(json_log_value(v));
  return {"ok", Json{{"r_hat", json_log_value(out.r_hat)}, {"values", values}}};
}

inline Outcome run(const ZariskiTask& t, unsigned long) {
  IntMatrix A = zariski_matrix(t.c, t.r);
  Json rows = Json::array();
  for (const auto& row : A) {
    Json r = Json::array();
    for (const mpz_class& x : row) r.push_back(wire::checked_int(x, "matrix entry"));
    rows.push_back(r);
  }
  return {"ok", Json{{"matrix", rows}, {"verified", zariski_verify(A, t.c, t.r)}}};
}

inline Outcome run(const BerkovichTask& t, unsigned long) {
  if (t.op == "classify") {
    const char* name = "";
    switch (classify(*t.alpha)) {
      case PointType::TypeI: name = "i"; break;
      case PointType::TypeII: name = "ii"; break;
      case PointType::TypeIII: name = "iii"; break;
      case PointType::TypeIVPrefix: name = "iv-prefix"; break;
    }
    return {"ok", Json{{"type", name}}};
  }
  if (t.op == "dominates") {
    switch (tri_dominates(*t.alpha, *t.beta)) {
      case Decision::Yes: return {"ok", Json{{"result", "yes"}}};
      case Decision::No: return {"ok", Json{{"result", "no"}}};
      case Decision::Undecidable:
        return {"indeterminate", Json{{"result", "undecidable"},
                                      {"detail", "the finite chain does not settle domination"}}};
    }
  }
  if (t.op == "meet") {
    BerkovichPoint m = meet(*t.alpha, *t.beta);
    return {"ok", Json{{"point", json_point(m)}}};
  }
  if (t.op == "path_point") {
    if (t.alpha->is_prefix() && t.alpha->last().s < *t.s)
      return {"indeterminate",
              Json{{"detail", "requested radius lies below the known chain"}}};
    BerkovichPoint q = path_point(*t.alpha, *t.s);
    return {"ok", Json{{"point", json_point(q)}}};
  }
  DiscSet set = union_discs(t.field, t.constraints);
  Json discs = Json::array();
  for (const Disc& d : set.discs)
    discs.push_back(Json{{"center", json_hahn(d.center)}, {"s", json_ext_log_value(d.s)}});
  return {"ok", Json{{"discs", discs}, {"pairwise_disjoint", set.pairwise_disjoint}}};
}

inline Outcome run(const InvariantsTask& t, unsigned long) {
  auto tuple_json = [](const InvariantTuple& v) {
    return Json{{"trdeg", v.trdeg},
                {"ratrank", v.ratrank},
                {"restrdeg", v.restrdeg},
                {"defect", v.defect}};
  };
  InvariantTuple cur = monomial_invariants(t.weights);
  Json steps = Json::array();
  steps.push_back(tuple_json(cur));
  for (ExtensionType e : t.extensions) {
    cur = extend_invariants(cur, e);
    steps.push_back(tuple_json(cur));
  }
  return {"ok", Json{{"steps", steps}}};
}

inline Outcome run(const CheckTask& t, unsigned long) {
  VariationReport rep = check_variation(t.profile, t.reaches_zero);
  return {"ok", Json{{"slopes_ok", rep.slopes_ok},
                     {"convexity_ok", rep.convexity_ok},
                     {"boundary_ok", rep.boundary_ok},
                     {"bounds_ok", rep.bounds_ok},
                     {"ok", rep.ok()}}};
}

}  // namespace runner

inline size_t thread_budget(size_t jobs) {
  size_t n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("PADIC_RADII_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) n = v;
  }
  if (n == 0) n = 1;
  if (jobs == 0) jobs = 1;
  return n < jobs ? n : jobs;
}

inline Json run_task_entry(const TaskEntry& entry, size_t index, unsigned long p) {
  Json out = Json{{"index", index}, {"task", entry.kind}};
  try {
    runner::Outcome res =
        std::visit([&](const auto& t) { return runner::run(t, p); }, entry.task);
    out["status"] = res.status;
    if (std::string(res.status) == "fail")
      out["error"] = res.body;
    else
      out["output"] = std::move(res.body);
  } catch (const std::exception& e) {
    out["status"] = "fail";
    out["error"] = e.what();
  }
  return out;
}

inline Json execute_document(const ProblemDocument& doc, bool reproducible = false) {
  const size_t n = doc.tasks.size();
  std::vector<Json> results(n);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      results[i] = run_task_entry(doc.tasks[i], i, doc.p);
    }
  };
  const size_t threads = thread_budget(n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  Json report = Json::object();
  report["version"] = "padic-radii/1";
  report["p"] = doc.p;
  if (!reproducible) {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    report["generated"] = buf;
  }
  bool all_ok = true;
  Json tasks = Json::array();
  for (Json& r : results) {
    if (r["status"] != "ok") all_ok = false;
    tasks.push_back(std::move(r));
  }
  report["tasks"] = tasks;
  report["all_ok"] = all_ok;
  return report;
}

}  // namespace padic
