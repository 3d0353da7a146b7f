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

// CSV formats for instances, predictions and metrics, plus the OPT sidecar.
//
// Instance:   "# kind=display|gap k=<int> T=<int>[ dummy=1]"
//             "budgets,<b0>,...,<b{k-1}>"
//             "<t>,<w0>,...,<w{k-1}>[,<u0>,...,<u{k-1}>]" per impression
// Prediction: "<t>,<advertiser>" per impression
// Metrics:    header "predictor,alpha,q,rep,alg,opt,prd,robustness,
//             consistency,followed_fraction"; undefined numbers are empty.
// Numbers use the shortest representation that round-trips exactly.

#ifndef EXPAVG_IO_H_
#define EXPAVG_IO_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expavg/types.h"

namespace expavg {

std::string FormatDouble(double x);
// Throws ValidationError mentioning what on malformed input.
double ParseDouble(std::string_view text, std::string_view what);
long long ParseInt(std::string_view text, std::string_view what);

void WriteInstanceCsv(std::ostream& out, const Instance& instance);
// Parses and validates. Throws ValidationError with the offending line.
Instance ReadInstanceCsv(std::istream& in);
void WriteInstanceCsvFile(const std::string& path, const Instance& instance);
Instance ReadInstanceCsvFile(const std::string& path);

void WritePredictionCsv(std::ostream& out, const Prediction& prediction);
Prediction ReadPredictionCsv(std::istream& in);
void WritePredictionCsvFile(const std::string& path,
                            const Prediction& prediction);
Prediction ReadPredictionCsvFile(const std::string& path);

struct MetricsRow {
  std::string predictor;
  // NaN where undefined (written empty).
  double alpha = 0.0;
  double q = 0.0;
  int rep = 0;
  double alg = 0.0;
  double opt = 0.0;
  double prd = 0.0;
  double robustness = 0.0;
  double consistency = 0.0;
  double followed_fraction = 0.0;
};

// Field-wise equality that treats two NaNs as equal.
bool SameRow(const MetricsRow& x, const MetricsRow& y);

void WriteMetricsCsv(std::ostream& out, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> ReadMetricsCsv(std::istream& in);

// The sidecar lives at instance_path + ".opt" and holds one number.
std::string OptSidecarPath(const std::string& instance_path);
void WriteOptSidecar(const std::string& instance_path, double opt);
std::optional<double> ReadOptSidecar(const std::string& instance_path);

}  // namespace expavg

#endif  // EXPAVG_IO_H_
