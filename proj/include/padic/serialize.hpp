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

#include <gmpxx.h>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "padic/berkovich.hpp"
#include "padic/diffmod.hpp"
#include "padic/error.hpp"
#include "padic/hahn.hpp"
#include "padic/log_value.hpp"
#include "padic/plfun.hpp"

// Wire formats.  Every number crossing the boundary is exact: rationals as
// [num, den] pairs, values in Q + Q*sqrt(2) as [a_num, a_den, b_num, b_den]
// quadruples, CSV cells as num/den fractions.  No decimal floats anywhere
// except the SVG plots, which are convenience output only.

namespace padic {

using Json = nlohmann::ordered_json;

namespace wire {

inline long long checked_int(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) fail("serialize", std::string(what) + " overflows the integer wire range");
  return static_cast<long long>(z.get_si());
}

}  // namespace wire

// ---------------------------------------------------------------------------
// JSON emission

inline Json json_rational(const mpq_class& q) {
  return Json::array({wire::checked_int(q.get_num(), "numerator"),
                      wire::checked_int(q.get_den(), "denominator")});
}

inline Json json_log_value(const LogValue& v) {
  return Json::array({wire::checked_int(v.rat().get_num(), "rational numerator"),
                      wire::checked_int(v.rat().get_den(), "rational denominator"),
                      wire::checked_int(v.irr().get_num(), "sqrt2 numerator"),
                      wire::checked_int(v.irr().get_den(), "sqrt2 denominator")});
}

inline Json json_ext_log_value(const ExtLogValue& v) {
  if (v.is_infinite()) return Json("inf");
  return json_log_value(v.finite());
}

inline Json json_interval(const Interval& iv) {
  return Json{{"lo", json_log_value(iv.lo)},
              {"hi", json_log_value(iv.hi)},
              {"lo_open", iv.lo_open},
              {"hi_open", iv.hi_open}};
}

inline Json json_hahn(const HahnElement& h) {
  Json out = Json::array();
  for (const auto& t : h.terms())
    out.push_back(Json::array({t.coeff,
                               wire::checked_int(t.exp.get_num(), "exponent numerator"),
                               wire::checked_int(t.exp.get_den(), "exponent denominator")}));
  return out;
}

inline Json json_point(const BerkovichPoint& alpha) {
  auto disc_literal = [](const Disc& d) {
    return Json{{"center", json_hahn(d.center)}, {"s", json_ext_log_value(d.s)}};
  };
  if (!alpha.is_prefix()) return disc_literal(alpha.disc());
  Json chain = Json::array();
  for (const Disc& d : alpha.chain()) chain.push_back(disc_literal(d));
  return Json{{"chain", chain}};
}

// ---------------------------------------------------------------------------
// JSON decoding with path-carrying diagnostics

inline void expect(bool ok, const std::string& path, const std::string& what) {
  if (!ok) fail("document", path + ": " + what);
}

inline const Json& field(const Json& j, const char* name, const std::string& path) {
  expect(j.is_object(), path, "expected an object");
  auto it = j.find(name);
  expect(it != j.end(), path, std::string("missing field '") + name + "'");
  return *it;
}

inline const Json* opt_field(const Json& j, const char* name) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(name);
  return it == j.end() ? nullptr : &*it;
}

inline long parse_int(const Json& j, const std::string& path) {
  expect(j.is_number_integer(), path, "expected an integer");
  long long v = j.get<long long>();
  expect(v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max(), path,
         "integer out of range");
  return static_cast<long>(v);
}

inline bool parse_bool(const Json& j, const std::string& path) {
  expect(j.is_boolean(), path, "expected a boolean");
  return j.get<bool>();
}

inline mpq_class parse_rational(const Json& j, const std::string& path) {
  expect(j.is_array() && j.size() == 2, path, "expected [num, den]");
  mpz_class num(parse_int(j[0], path + "[0]"));
  mpz_class den(parse_int(j[1], path + "[1]"));
  expect(den != 0, path, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline LogValue parse_log_value(const Json& j, const std::string& path) {
  expect(j.is_array() && j.size() == 4, path, "expected [a_num, a_den, b_num, b_den]");
  mpz_class an(parse_int(j[0], path + "[0]")), ad(parse_int(j[1], path + "[1]"));
  mpz_class bn(parse_int(j[2], path + "[2]")), bd(parse_int(j[3], path + "[3]"));
  expect(ad != 0 && bd != 0, path, "zero denominator");
  mpq_class a(an, ad), b(bn, bd);
  a.canonicalize();
  b.canonicalize();
  return LogValue{a, b};
}

inline ExtLogValue parse_ext_log_value(const Json& j, const std::string& path) {
  if (j.is_string()) {
    expect(j.get<std::string>() == "inf", path, "expected \"inf\" or a value quadruple");
    return ExtLogValue::infinity();
  }
  return ExtLogValue(parse_log_value(j, path));
}

inline Interval parse_interval(const Json& j, const std::string& path) {
  expect(j.is_object(), path, "expected an interval object");
  LogValue lo = parse_log_value(field(j, "lo", path), path + ".lo");
  LogValue hi = parse_log_value(field(j, "hi", path), path + ".hi");
  bool lo_open = false, hi_open = false;
  if (const Json* f = opt_field(j, "lo_open")) lo_open = parse_bool(*f, path + ".lo_open");
  if (const Json* f = opt_field(j, "hi_open")) hi_open = parse_bool(*f, path + ".hi_open");
  try {
    return Interval::make(lo, hi, lo_open, hi_open);
  } catch (const std::invalid_argument& e) {
    fail("document", path + ": " + e.what());
  }
}

inline HahnElement parse_hahn(const Json& j, const FqField& F, const std::string& path) {
  expect(j.is_array(), path, "expected an array of [coeff, exp_num, exp_den] terms");
  std::vector<HahnElement::Term> terms;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    const Json& t = j[i];
    expect(t.is_array() && t.size() == 3, at, "expected [coeff, exp_num, exp_den]");
    long long c = parse_int(t[0], at + "[0]");
    expect(c >= 0 && static_cast<unsigned long long>(c) < F.q(), at, "coefficient outside the field");
    mpz_class en(parse_int(t[1], at + "[1]")), ed(parse_int(t[2], at + "[2]"));
    expect(ed != 0, at, "zero denominator");
    mpq_class e(en, ed);
    e.canonicalize();
    terms.push_back({e, static_cast<FqField::Elem>(c)});
  }
  try {
    return HahnElement(F, std::move(terms));
  } catch (const std::invalid_argument& e) {
    fail("document", path + ": " + e.what());
  }
}

inline BerkovichPoint parse_point(const Json& j, const FqField& F, const std::string& path) {
  expect(j.is_object(), path, "expected a point literal");
  auto parse_disc = [&](const Json& d, const std::string& at) {
    HahnElement center = parse_hahn(field(d, "center", at), F, at + ".center");
    ExtLogValue s = parse_ext_log_value(field(d, "s", at), at + ".s");
    try {
      return Disc(std::move(center), std::move(s));
    } catch (const std::invalid_argument& e) {
      fail("document", at + ": " + e.what());
    }
  };
  if (const Json* chain = opt_field(j, "chain")) {
    expect(chain->is_array() && !chain->empty(), path + ".chain", "expected a nonempty array");
    std::vector<Disc> discs;
    for (size_t i = 0; i < chain->size(); ++i)
      discs.push_back(parse_disc((*chain)[i], path + ".chain[" + std::to_string(i) + "]"));
    try {
      return BerkovichPoint::seq_prefix(std::move(discs));
    } catch (const std::invalid_argument& e) {
      fail("document", path + ".chain: " + e.what());
    }
  }
  return BerkovichPoint(parse_disc(j, path));
}

// ---------------------------------------------------------------------------
// CSV: one knot per row, coordinates split into rational and sqrt2 parts,
// every cell an exact num/den fraction.

inline std::string csv_fraction(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string csv_knot(const Knot& k) {
  return csv_fraction(k.x.rat()) + "," + csv_fraction(k.x.irr()) + "," +
         csv_fraction(k.y.rat()) + "," + csv_fraction(k.y.irr());
}

inline std::string plfun_to_csv(const PLFun& f) {
  std::string out = "x_a,x_b,y_a,y_b\n";
  for (const Knot& k : f.knots()) out += csv_knot(k) + "\n";
  return out;
}

namespace wire {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline mpq_class parse_fraction(const std::string& cell, const std::string& path) {
  size_t slash = cell.find('/');
  expect(slash != std::string::npos && slash > 0 && slash + 1 < cell.size(), path,
         "malformed fraction '" + cell + "'");
  mpz_class num, den;
  if (num.set_str(cell.substr(0, slash), 10) != 0 || den.set_str(cell.substr(slash + 1), 10) != 0)
    expect(false, path, "malformed fraction '" + cell + "'");
  expect(den != 0, path, "zero denominator in '" + cell + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Rows of an entire CSV block, header checked and stripped.
inline std::vector<std::vector<std::string>> csv_rows(const std::string& text,
                                                      const std::string& header,
                                                      const std::string& path) {
  std::vector<std::string> lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  expect(!lines.empty() && lines.front() == header, path, "expected header '" + header + "'");
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 1; i < lines.size(); ++i) rows.push_back(split(lines[i], ','));
  return rows;
}

inline Knot parse_knot_cells(const std::vector<std::string>& cells, size_t base,
                             const std::string& path) {
  LogValue x{parse_fraction(cells[base], path), parse_fraction(cells[base + 1], path)};
  LogValue y{parse_fraction(cells[base + 2], path), parse_fraction(cells[base + 3], path)};
  return Knot{std::move(x), std::move(y)};
}

}  // namespace wire

// The CSV block carries knots only; the domain travels out of band so the
// round trip is exact even at open endpoints.
inline PLFun plfun_from_csv(const std::string& text, const Interval& dom,
                            const std::string& path) {
  auto rows = wire::csv_rows(text, "x_a,x_b,y_a,y_b", path);
  std::vector<Knot> knots;
  for (size_t i = 0; i < rows.size(); ++i) {
    const std::string at = path + " row " + std::to_string(i + 1);
    expect(rows[i].size() == 4, at, "expected 4 cells");
    knots.push_back(wire::parse_knot_cells(rows[i], 0, at));
  }
  try {
    return PLFun(dom, std::move(knots));
  } catch (const std::invalid_argument& e) {
    fail("document", path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Profile entries: CSV rows tagged exact/lower/upper plus a JSON sidecar of
// segment metadata (interval, tag, row counts) so parsing needs no guessing.

inline std::string profile_entry_to_csv(const std::vector<ProfileSegment>& segs) {
  std::string out = "x_a,x_b,y_a,y_b,tag\n";
  for (const ProfileSegment& s : segs) {
    const char* tag = s.exact() ? "exact" : "lower";
    for (const Knot& k : s.lo.knots()) out += csv_knot(k) + "," + tag + "\n";
    if (s.hi)
      for (const Knot& k : s.hi->knots()) out += csv_knot(k) + ",upper\n";
  }
  return out;
}

inline Json json_profile_entry(const std::vector<ProfileSegment>& segs) {
  Json meta = Json::array();
  for (const ProfileSegment& s : segs)
    meta.push_back(Json{{"interval", json_interval(s.where)},
                        {"tag", s.exact() ? "exact" : "bounded"},
                        {"points", s.lo.knots().size()},
                        {"hi_points", s.hi ? s.hi->knots().size() : 0}});
  return Json{{"segments", meta}, {"csv", profile_entry_to_csv(segs)}};
}

inline std::vector<ProfileSegment> profile_entry_from_json(const Json& j,
                                                           const std::string& path) {
  const Json& meta = field(j, "segments", path);
  expect(meta.is_array() && !meta.empty(), path + ".segments", "expected a nonempty array");
  const Json& csv = field(j, "csv", path);
  expect(csv.is_string(), path + ".csv", "expected a string");
  auto rows = wire::csv_rows(csv.get<std::string>(), "x_a,x_b,y_a,y_b,tag", path + ".csv");
  size_t cursor = 0;
  auto take = [&](size_t count, const char* tag, const Interval& dom,
                  const std::string& at) {
    std::vector<Knot> knots;
    for (size_t k = 0; k < count; ++k) {
      expect(cursor < rows.size(), at, "csv block ran out of rows");
      const auto& cells = rows[cursor];
      const std::string row_at = at + " row " + std::to_string(cursor + 1);
      expect(cells.size() == 5, row_at, "expected 5 cells");
      expect(cells[4] == tag, row_at, std::string("expected tag '") + tag + "'");
      knots.push_back(wire::parse_knot_cells(cells, 0, row_at));
      ++cursor;
    }
    try {
      return PLFun(dom, std::move(knots));
    } catch (const std::invalid_argument& e) {
      fail("document", at + ": " + e.what());
    }
  };
  std::vector<ProfileSegment> segs;
  for (size_t i = 0; i < meta.size(); ++i) {
    const std::string at = path + ".segments[" + std::to_string(i) + "]";
    const Json& m = meta[i];
    Interval where = parse_interval(field(m, "interval", at), at + ".interval");
    const Json& tag_j = field(m, "tag", at);
    expect(tag_j.is_string(), at + ".tag", "expected a string");
    const std::string tag = tag_j.get<std::string>();
    expect(tag == "exact" || tag == "bounded", at + ".tag", "expected 'exact' or 'bounded'");
    const bool exact = tag == "exact";
    long long points = parse_int(field(m, "points", at), at + ".points");
    long long hi_points = parse_int(field(m, "hi_points", at), at + ".hi_points");
    expect(points > 0 && hi_points >= 0, at, "bad row counts");
    expect(exact == (hi_points == 0), at, "tag disagrees with upper-row count");
    PLFun lo = take(static_cast<size_t>(points), exact ? "exact" : "lower", where, at);
    std::optional<PLFun> hi;
    if (hi_points > 0) hi = take(static_cast<size_t>(hi_points), "upper", where, at);
    segs.push_back(ProfileSegment{std::move(where),
                                  exact ? ProfileTag::Exact : ProfileTag::Bounded,
                                  std::move(lo), std::move(hi)});
  }
  expect(cursor == rows.size(), path + ".csv", "trailing rows after the last segment");
  return segs;
}

// ---------------------------------------------------------------------------
// SVG plots.  Doubles appear here and nowhere else; this output is for
// eyeballs, not for round trips.

namespace wire {

inline double to_double(const LogValue& v) {
  return v.rat().get_d() + v.irr().get_d() * 1.4142135623730951;
}

inline std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

}  // namespace wire

struct SvgCurve {
  PLFun fun;
  bool dashed = false;
};

inline std::string svg_plot(const std::vector<SvgCurve>& curves) {
  if (curves.empty()) fail("svg_plot", "nothing to plot");
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool first = true;
  for (const SvgCurve& c : curves)
    for (const Knot& k : c.fun.knots()) {
      double x = wire::to_double(k.x), y = wire::to_double(k.y);
      if (first) {
        x0 = x1 = x;
        y0 = y1 = y;
        first = false;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (x1 - x0 < 1e-9) x1 = x0 + 1;
  if (y1 - y0 < 1e-9) y1 = y0 + 1;
  const double W = 640, H = 480, pad = 40;
  auto px = [&](double x) { return pad + (x - x0) / (x1 - x0) * (W - 2 * pad); };
  auto py = [&](double y) { return H - pad - (y - y0) / (y1 - y0) * (H - 2 * pad); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 480\">\n";
  out += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  out += "<line x1=\"" + wire::fmt(px(x0)) + "\" y1=\"" + wire::fmt(py(y0)) + "\" x2=\"" +
         wire::fmt(px(x1)) + "\" y2=\"" + wire::fmt(py(y0)) +
         "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + wire::fmt(px(x0)) + "\" y1=\"" + wire::fmt(py(y0)) + "\" x2=\"" +
         wire::fmt(px(x0)) + "\" y2=\"" + wire::fmt(py(y1)) +
         "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  for (size_t i = 0; i < curves.size(); ++i) {
    std::string pts;
    for (const Knot& k : curves[i].fun.knots()) {
      if (!pts.empty()) pts += " ";
      pts += wire::fmt(px(wire::to_double(k.x))) + "," + wire::fmt(py(wire::to_double(k.y)));
    }
    out += "<polyline fill=\"none\" stroke=\"";
    out += palette[i % 6];
    out += "\" stroke-width=\"2\"";
    if (curves[i].dashed) out += " stroke-dasharray=\"6 4\"";
    if (curves[i].fun.knots().size() == 1)
      out += " points=\"" + pts + "\"/><circle cx=\"" +
             wire::fmt(px(wire::to_double(curves[i].fun.knots()[0].x))) + "\" cy=\"" +
             wire::fmt(py(wire::to_double(curves[i].fun.knots()[0].y))) +
             "\" r=\"3\" fill=\"" + palette[i % 6] + "\"/>\n";
    else
      out += " points=\"" + pts + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace padic
