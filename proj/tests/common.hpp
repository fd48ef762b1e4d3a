#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fracgn/fracgn.hpp"

namespace testutil {

using namespace fracgn;

inline SampledFunction mode(const Grid& g, double cycles, bool sine = false) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(i);
    const double t = 2.0 * std::numbers::pi * cycles * x / g.box_length;
    v[i] = sine ? std::sin(t) : std::cos(t);
  }
  return SampledFunction(g, std::move(v), "mode");
}

inline SampledFunction gaussian(const Grid& g, double width, double center = 0.0) {
  GeneratorSpec s;
  s.kind = GeneratorKind::gaussian;
  s.width = width;
  s.center = {center, 0.0};
  return generate(s, g, "gaussian");
}

inline const io::Corpus& corpus() {
  static const io::Corpus c = io::reference_corpus();
  return c;
}

inline const std::vector<SampledFunction>& corpus_functions() {
  static const std::vector<SampledFunction> fs = corpus().generate_all();
  return fs;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testutil
