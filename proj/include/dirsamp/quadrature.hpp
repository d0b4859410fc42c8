#pragma once
// Composite Simpson quadrature with panel doubling.

#include <cmath>
#include <stdexcept>

namespace dirsamp {

struct QuadratureSpec {
  int panels = 4096;  // even, >= 64
  double abs_tol = 1e-10;  // stop when two successive estimates agree
  int max_panels = 65536;

  void validate() const {
    if (panels < 64 || panels % 2 != 0) throw std::invalid_argument("QuadratureSpec: panels must be even and >= 64");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be positive");
    if (max_panels < panels) throw std::invalid_argument("QuadratureSpec: max_panels < panels");
  }
};

template <class F>
double simpson(F&& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < panels; ++i) {
    const double v = f(a + i * h);
    if (i % 2) odd += v; else even += v;
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& q = {}) {
  q.validate();
  if (a == b) return 0.0;
  int n = q.panels;
  double prev = simpson(f, a, b, n);
  while (n < q.max_panels) {
    n *= 2;
    const double cur = simpson(f, a, b, n);
    if (std::abs(cur - prev) < q.abs_tol) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace dirsamp
