#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "gncs/states.hpp"
#include "gncs/sweep.hpp"

// CSV and JSON emission. Floating-point fields are printed with 17
// significant digits so round-tripping is exact and reruns are byte-identical.

namespace gncs {
namespace io {

inline std::string float17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string to_csv(const std::vector<SqueezeRow>& rows) {
  std::string out = "lambda,r,phi,z_abs2,var_x1,var_x2,j3_abs,s1,s2,error\n";
  for (const auto& r : rows) {
    out += float17(r.lambda) + ',' + std::to_string(r.r) + ',' +
           float17(r.phi) + ',' + float17(r.z_abs2) + ',' + float17(r.var_x1) +
           ',' + float17(r.var_x2) + ',' + float17(r.j3_abs) + ',' +
           float17(r.s1) + ',' + float17(r.s2) + ',' + r.error + '\n';
  }
  return out;
}

inline std::string to_csv(const std::vector<StatsRow>& rows) {
  std::string out = "lambda,r,z_abs2,n_mean,n2_mean,g2,mandel_q,error\n";
  for (const auto& r : rows) {
    out += float17(r.lambda) + ',' + std::to_string(r.r) + ',' +
           float17(r.z_abs2) + ',' + float17(r.n_mean) + ',' +
           float17(r.n2_mean) + ',' + float17(r.g2) + ',' +
           float17(r.mandel_q) + ',' + r.error + '\n';
  }
  return out;
}

inline std::string to_csv(const std::vector<MeasureRow>& rows) {
  std::string out = "lambda,r,t,weight\n";
  for (const auto& r : rows) {
    out += float17(r.lambda) + ',' + std::to_string(r.r) + ',' + float17(r.t) +
           ',' + float17(r.weight) + '\n';
  }
  return out;
}

struct WavefunctionSample {
  double x;
  cplx value;
};

inline std::string to_csv(const std::vector<WavefunctionSample>& samples) {
  std::string out = "x,re,im,abs2\n";
  for (const auto& s : samples) {
    out += float17(s.x) + ',' + float17(s.value.real()) + ',' +
           float17(s.value.imag()) + ',' + float17(std::norm(s.value)) + '\n';
  }
  return out;
}

inline nlohmann::json to_json(const FockCoefficients& s) {
  nlohmann::json amps = nlohmann::json::array();
  double norm_check = 0.0;
  for (const auto& c : s.amplitudes) {
    amps.push_back({c.real(), c.imag()});
    norm_check += std::norm(c);
  }
  return nlohmann::json{{"lambda", s.lambda},
                        {"r", s.r},
                        {"z_abs", s.z_abs},
                        {"z_phase", s.z_phase},
                        {"n_max", s.n_max()},
                        {"tail_bound", s.tail_bound},
                        {"amplitudes", std::move(amps)},
                        {"norm_check", norm_check}};
}

}  // namespace io
}  // namespace gncs
