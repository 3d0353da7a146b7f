// Copyright 2026 The Authors.
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

#include "expavg/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace expavg {
namespace {

std::vector<std::string_view> Split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    parts.push_back(line.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

// Strips a trailing carriage return so CRLF files parse too.
bool GetLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::string AtLine(int n) { return " (line " + std::to_string(n) + ")"; }

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return in;
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  return out;
}

std::string OptionalNumber(double x) {
  return std::isnan(x) ? std::string() : FormatDouble(x);
}

double ParseOptional(std::string_view text, std::string_view what) {
  return text.empty() ? std::nan("") : ParseDouble(text, what);
}

bool SameNumber(double x, double y) {
  return (std::isnan(x) && std::isnan(y)) || x == y;
}

constexpr std::string_view kMetricsHeader =
    "predictor,alpha,q,rep,alg,opt,prd,robustness,consistency,"
    "followed_fraction";

}  // namespace

std::string FormatDouble(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view text, std::string_view what) {
  if (text == "inf") return INFINITY;
  double value = 0.0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() ||
      text.empty()) {
    throw ValidationError("malformed " + std::string(what) + ": '" +
                          std::string(text) + "'");
  }
  return value;
}

long long ParseInt(std::string_view text, std::string_view what) {
  long long value = 0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() ||
      text.empty()) {
    throw ValidationError("malformed " + std::string(what) + ": '" +
                          std::string(text) + "'");
  }
  return value;
}

void WriteInstanceCsv(std::ostream& out, const Instance& instance) {
  const bool gap = instance.kind == ProblemKind::kGap;
  out << "# kind=" << ToString(instance.kind)
      << " k=" << instance.num_advertisers()
      << " T=" << instance.num_impressions();
  if (instance.has_dummy) out << " dummy=1";
  out << "\nbudgets";
  for (const Advertiser& a : instance.advertisers) {
    out << ',' << FormatDouble(a.budget);
  }
  out << '\n';
  for (const Impression& imp : instance.impressions) {
    out << imp.id;
    for (double w : imp.values) out << ',' << FormatDouble(w);
    if (gap) {
      for (double u : imp.sizes) out << ',' << FormatDouble(u);
    }
    out << '\n';
  }
}

Instance ReadInstanceCsv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!GetLine(in, line) || line.rfind("# ", 0) != 0) {
    throw ValidationError("instance CSV must start with '# kind=...'");
  }
  Instance inst;
  long long k = -1;
  long long num_t = -1;
  bool saw_kind = false;
  for (std::string_view token : Split(std::string_view(line).substr(2), ' ')) {
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("malformed header token '" + std::string(token) +
                            "'" + AtLine(line_no));
    }
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (key == "kind") {
      if (value == "display") {
        inst.kind = ProblemKind::kDisplayAds;
      } else if (value == "gap") {
        inst.kind = ProblemKind::kGap;
      } else {
        throw ValidationError("unknown kind '" + std::string(value) + "'");
      }
      saw_kind = true;
    } else if (key == "k") {
      k = ParseInt(value, "k");
    } else if (key == "T") {
      num_t = ParseInt(value, "T");
    } else if (key == "dummy") {
      inst.has_dummy = ParseInt(value, "dummy") != 0;
    } else {
      throw ValidationError("unknown header key '" + std::string(key) + "'");
    }
  }
  if (!saw_kind || k < 0 || num_t < 0) {
    throw ValidationError("header needs kind, k and T");
  }
  const bool gap = inst.kind == ProblemKind::kGap;

  ++line_no;
  if (!GetLine(in, line)) throw ValidationError("missing budgets line");
  const auto budgets = Split(line, ',');
  if (budgets.front() != "budgets" || (long long)budgets.size() != k + 1) {
    throw ValidationError("expected 'budgets' and k budgets" + AtLine(line_no));
  }
  for (long long a = 0; a < k; ++a) {
    inst.advertisers.push_back(
        {static_cast<int>(a), ParseDouble(budgets[a + 1], "budget")});
  }

  const std::size_t width = 1 + k * (gap ? 2 : 1);
  while (GetLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = Split(line, ',');
    if (fields.size() != width) {
      throw ValidationError("expected " + std::to_string(width) + " fields" +
                            AtLine(line_no));
    }
    Impression imp;
    imp.id = static_cast<int>(ParseInt(fields[0], "impression id"));
    for (long long a = 0; a < k; ++a) {
      imp.values.push_back(ParseDouble(fields[1 + a], "value"));
    }
    if (gap) {
      for (long long a = 0; a < k; ++a) {
        imp.sizes.push_back(ParseDouble(fields[1 + k + a], "size"));
      }
    }
    inst.impressions.push_back(std::move(imp));
  }
  if ((long long)inst.impressions.size() != num_t) {
    throw ValidationError("header announces T=" + std::to_string(num_t) +
                          " but " + std::to_string(inst.impressions.size()) +
                          " impressions follow");
  }
  RequireValid(inst);
  return inst;
}

void WriteInstanceCsvFile(const std::string& path, const Instance& instance) {
  std::ofstream out = OpenOutput(path);
  WriteInstanceCsv(out, instance);
}

Instance ReadInstanceCsvFile(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ReadInstanceCsv(in);
}

void WritePredictionCsv(std::ostream& out, const Prediction& prediction) {
  for (int t = 0; t < prediction.size(); ++t) {
    out << t << ',' << prediction[t] << '\n';
  }
}

Prediction ReadPredictionCsv(std::istream& in) {
  Prediction prediction;
  std::string line;
  int line_no = 0;
  while (GetLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = Split(line, ',');
    if (fields.size() != 2) {
      throw ValidationError("expected 't,advertiser'" + AtLine(line_no));
    }
    const long long t = ParseInt(fields[0], "impression id");
    if (t != prediction.size()) {
      throw ValidationError("prediction rows must be in arrival order" +
                            AtLine(line_no));
    }
    prediction.assignment.push_back(
        static_cast<int>(ParseInt(fields[1], "advertiser id")));
  }
  return prediction;
}

void WritePredictionCsvFile(const std::string& path,
                            const Prediction& prediction) {
  std::ofstream out = OpenOutput(path);
  WritePredictionCsv(out, prediction);
}

Prediction ReadPredictionCsvFile(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ReadPredictionCsv(in);
}

bool SameRow(const MetricsRow& x, const MetricsRow& y) {
  return x.predictor == y.predictor && SameNumber(x.alpha, y.alpha) &&
         SameNumber(x.q, y.q) && x.rep == y.rep && SameNumber(x.alg, y.alg) &&
         SameNumber(x.opt, y.opt) && SameNumber(x.prd, y.prd) &&
         SameNumber(x.robustness, y.robustness) &&
         SameNumber(x.consistency, y.consistency) &&
         SameNumber(x.followed_fraction, y.followed_fraction);
}

void WriteMetricsCsv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << kMetricsHeader << '\n';
  for (const MetricsRow& r : rows) {
    out << r.predictor << ',' << OptionalNumber(r.alpha) << ','
        << OptionalNumber(r.q) << ',' << r.rep << ',' << OptionalNumber(r.alg)
        << ',' << OptionalNumber(r.opt) << ',' << OptionalNumber(r.prd) << ','
        << OptionalNumber(r.robustness) << ',' << OptionalNumber(r.consistency)
        << ',' << OptionalNumber(r.followed_fraction) << '\n';
  }
}

std::vector<MetricsRow> ReadMetricsCsv(std::istream& in) {
  std::string line;
  if (!GetLine(in, line) || line != kMetricsHeader) {
    throw ValidationError("metrics CSV has an unexpected header");
  }
  std::vector<MetricsRow> rows;
  int line_no = 1;
  while (GetLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = Split(line, ',');
    if (f.size() != 10) {
      throw ValidationError("expected 10 metrics fields" + AtLine(line_no));
    }
    MetricsRow r;
    r.predictor = std::string(f[0]);
    r.alpha = ParseOptional(f[1], "alpha");
    r.q = ParseOptional(f[2], "q");
    r.rep = static_cast<int>(ParseInt(f[3], "rep"));
    r.alg = ParseOptional(f[4], "alg");
    r.opt = ParseOptional(f[5], "opt");
    r.prd = ParseOptional(f[6], "prd");
    r.robustness = ParseOptional(f[7], "robustness");
    r.consistency = ParseOptional(f[8], "consistency");
    r.followed_fraction = ParseOptional(f[9], "followed_fraction");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string OptSidecarPath(const std::string& instance_path) {
  return instance_path + ".opt";
}

void WriteOptSidecar(const std::string& instance_path, double opt) {
  std::ofstream out = OpenOutput(OptSidecarPath(instance_path));
  out << FormatDouble(opt) << '\n';
}

std::optional<double> ReadOptSidecar(const std::string& instance_path) {
  std::ifstream in(OptSidecarPath(instance_path));
  if (!in) return std::nullopt;
  std::string line;
  if (!GetLine(in, line)) return std::nullopt;
  return ParseDouble(line, "OPT sidecar");
}

}  // namespace expavg
