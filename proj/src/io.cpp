// Copyright 2026 The wgpst Authors
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

#include "wgpst/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "json.hpp"
#include "wgpst/error.hpp"

namespace wgpst {

using ojson = nlohmann::ordered_json;

std::string format_sig(double value, int digits) {
  if (value == 0.0) value = 0.0;  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  std::string s(buf);
  if (s.size() > 1 && s[0] == '-' && std::strtod(buf, nullptr) == 0.0) s.erase(0, 1);
  return s;
}

namespace {

double rounded(double v, int digits) { return std::strtod(format_sig(v, digits).c_str(), nullptr); }

ojson parse_json(std::string_view text, const char* what) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidParameter, std::string(what) + ": " + e.what());
  }
}

template <typename F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidParameter, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Dims parse_dims(std::string_view text) {
  int v[3] = {0, 0, 0};
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int k = 0; k < 3; ++k) {
    const auto [ptr, ec] = std::from_chars(p, end, v[k]);
    if (ec != std::errc()) fail(ErrorCode::InvalidParameter, "malformed dims '" + std::string(text) + "'");
    p = ptr;
    if (k < 2) {
      if (p == end || (*p != 'x' && *p != 'X'))
        fail(ErrorCode::InvalidParameter, "dims must look like LxBxH, got '" + std::string(text) + "'");
      ++p;
    }
  }
  if (p != end) fail(ErrorCode::InvalidParameter, "trailing text in dims '" + std::string(text) + "'");
  return Dims{v[0], v[1], v[2]};
}

std::string dims_to_string(const Dims& dims) {
  return std::to_string(dims.L) + "x" + std::to_string(dims.B) + "x" + std::to_string(dims.H);
}

std::string profile_to_json(const LatticeSpec& spec, const CouplingProfile& profile) {
  ojson j;
  j["dims"] = {spec.dims.L, spec.dims.B, spec.dims.H};
  j["J"] = rounded(spec.J, 15);
  ojson axes = ojson::object();
  for (Axis axis : kAxes) {
    ojson gaps = ojson::array();
    for (double g : profile[axis]) gaps.push_back(rounded(g, 15));
    axes[axis_name(axis)] = std::move(gaps);
  }
  j["axis_profiles"] = std::move(axes);
  return j.dump(2) + "\n";
}

CouplingProfile profile_from_json(std::string_view text, LatticeSpec* spec) {
  const ojson j = parse_json(text, "profile JSON");
  return guarded("profile JSON", [&] {
    LatticeSpec parsed;
    const auto dims = j.at("dims").get<std::vector<int>>();
    if (dims.size() != 3) fail(ErrorCode::Shape, "profile dims must have three entries");
    parsed.dims = Dims{dims[0], dims[1], dims[2]};
    parsed.J = j.at("J").get<double>();
    parsed.validate();
    CouplingProfile profile;
    for (Axis axis : kAxes) {
      profile[axis] = j.at("axis_profiles").at(axis_name(axis)).get<std::vector<double>>();
      const auto expected = static_cast<std::size_t>(parsed.dims[axis] - 1);
      if (profile[axis].size() != expected)
        fail(ErrorCode::Shape, std::string("axis ") + axis_name(axis) + " needs " +
                                   std::to_string(expected) + " couplings");
    }
    if (spec) *spec = parsed;
    return profile;
  });
}

std::string plan_to_csv(const FabricationPlan& plan) {
  std::string out = "axis,gap_index,J,kappa\n";
  for (const auto& g : plan.gaps) {
    out += axis_name(g.axis);
    out += ',' + std::to_string(g.gap) + ',' + format_sig(g.coupling, 12) + ',' +
           format_sig(g.kappa, 12) + '\n';
  }
  return out;
}

std::string gaussian_to_json(const GaussianState& state) {
  ojson j;
  j["modes"] = state.modes();
  j["d"] = std::vector<double>(state.d.data(), state.d.data() + state.d.size());
  std::vector<double> xi;
  for (Eigen::Index r = 0; r < state.xi.rows(); ++r)
    for (Eigen::Index c = 0; c < state.xi.cols(); ++c) xi.push_back(state.xi(r, c));
  j["xi"] = std::move(xi);
  return j.dump() + "\n";
}

GaussianState gaussian_from_json(std::string_view text) {
  const ojson j = parse_json(text, "Gaussian state JSON");
  return guarded("Gaussian state JSON", [&] {
    const int modes = j.at("modes").get<int>();
    const auto d = j.at("d").get<std::vector<double>>();
    const auto xi = j.at("xi").get<std::vector<double>>();
    const auto n = static_cast<std::size_t>(2 * modes);
    if (modes < 1 || d.size() != n || xi.size() != n * n)
      fail(ErrorCode::Shape, "Gaussian state arrays do not match the mode count");
    GaussianState s = GaussianState::vacuum(modes);
    for (std::size_t k = 0; k < n; ++k) s.d(static_cast<Eigen::Index>(k)) = d[k];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        s.xi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = xi[r * n + c];
    return s;
  });
}

std::string fock_to_json(const FockState& state) {
  ojson j;
  j["cutoff"] = state.cutoff();
  j["leak"] = state.leak();
  std::vector<double> re, im;
  const auto& c = state.matrix();
  for (Eigen::Index r = 0; r < c.rows(); ++r)
    for (Eigen::Index k = 0; k < c.cols(); ++k) {
      re.push_back(c(r, k).real());
      im.push_back(c(r, k).imag());
    }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump() + "\n";
}

FockState fock_from_json(std::string_view text) {
  const ojson j = parse_json(text, "Fock state JSON");
  return guarded("Fock state JSON", [&] {
    const int cutoff = j.at("cutoff").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    const double leak = j.value("leak", 0.0);
    if (cutoff < 0) fail(ErrorCode::Shape, "cutoff must be >= 0");
    const auto n = static_cast<std::size_t>(cutoff + 1);
    if (re.size() != n * n || im.size() != n * n)
      fail(ErrorCode::Shape, "Fock state arrays do not match the cutoff");
    Eigen::MatrixXcd c(cutoff + 1, cutoff + 1);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k)
        c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = cplx(re[r * n + k], im[r * n + k]);
    return FockState(std::move(c), leak);
  });
}

}  // namespace wgpst
