#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "bornflea/kernels.hpp"
#include "bornflea/rng.hpp"
#include "doctest.h"

using bornflea::Philox;
using bornflea::kernels::cplx;
using bornflea::kernels::Ops;

namespace {

std::vector<double> random_reals(std::size_t n, Philox& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

std::vector<cplx> random_cplx(std::size_t n, Philox& rng) {
  std::vector<cplx> v(n);
  for (cplx& x : v) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return v;
}

bool have_two_tables() {
  return bornflea::kernels::active().name != std::string_view("scalar");
}

}  // namespace

TEST_CASE("scalar kernels match naive formulas") {
  const Ops& k = bornflea::kernels::scalar_ops();
  Philox rng(7, 0);
  const auto a = random_reals(137, rng);
  const auto b = random_reals(137, rng);
  double want = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) want += a[i] * b[i];
  CHECK(k.dot(a.data(), b.data(), a.size()) == doctest::Approx(want).epsilon(1e-14));

  double dev = 0.0;
  for (double x : a) dev += std::abs(x - 0.25);
  CHECK(k.sum_abs_dev(a.data(), 0.25, a.size()) == doctest::Approx(dev).epsilon(1e-14));

  const auto ca = random_cplx(101, rng);
  const auto cb = random_cplx(101, rng);
  cplx cw{0.0, 0.0};
  for (std::size_t i = 0; i < ca.size(); ++i) cw += std::conj(ca[i]) * cb[i];
  const cplx got = k.cdot(ca.data(), cb.data(), ca.size());
  CHECK(std::abs(got - cw) < 1e-13);
}

TEST_CASE("simd and scalar tables are numerically equivalent") {
  if (!have_two_tables()) return;  // scalar-only host
  const Ops& s = bornflea::kernels::scalar_ops();
  const Ops& v = bornflea::kernels::active();
  Philox rng(42, 1);

  for (std::size_t n : {1u, 2u, 3u, 7u, 8u, 63u, 64u, 1025u, 4096u}) {
    const auto a = random_reals(n, rng);
    const auto b = random_reals(n, rng);
    CHECK(v.dot(a.data(), b.data(), n) ==
          doctest::Approx(s.dot(a.data(), b.data(), n)).epsilon(1e-12));
    CHECK(v.sum_abs_dev(a.data(), 0.1, n) ==
          doctest::Approx(s.sum_abs_dev(a.data(), 0.1, n)).epsilon(1e-12));

    const auto ca = random_cplx(n, rng);
    const auto cb = random_cplx(n, rng);
    const cplx c1 = s.cdot(ca.data(), cb.data(), n);
    const cplx c2 = v.cdot(ca.data(), cb.data(), n);
    CHECK(std::abs(c1 - c2) < 1e-12 * (1.0 + std::abs(c1)));

    std::vector<cplx> y1 = random_cplx(n, rng);
    std::vector<cplx> y2 = y1;
    const cplx alpha{0.3, -0.7};
    s.caxpy(alpha, ca.data(), y1.data(), n);
    v.caxpy(alpha, ca.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-14);

    std::vector<double> o1(n), o2(n);
    s.abs2(ca.data(), o1.data(), n);
    v.abs2(ca.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == doctest::Approx(o2[i]).epsilon(1e-14));
  }
}

TEST_CASE("wigner_row agrees between tables and with the definition") {
  const Ops& s = bornflea::kernels::scalar_ops();
  const Ops& v = bornflea::kernels::active();
  Philox rng(11, 3);
  const std::size_t n = 257;
  const auto bra = random_cplx(n, rng);
  const auto ket = random_cplx(n, rng);
  for (std::size_t i : {std::size_t{1}, std::size_t{5}, std::size_t{128}, std::size_t{200}, n - 2}) {
    const std::size_t jm = std::min(i, n - 1 - i);
    std::vector<cplx> g1(jm), g2(jm);
    s.wigner_row(bra.data(), ket.data(), i, jm, g1.data());
    v.wigner_row(bra.data(), ket.data(), i, jm, g2.data());
    for (std::size_t j = 1; j <= jm; ++j) {
      const cplx want = std::conj(bra[i + j]) * ket[i - j];
      CHECK(std::abs(g1[j - 1] - want) < 1e-14);
      CHECK(std::abs(g2[j - 1] - want) < 1e-14);
    }
  }
}

TEST_CASE("force_scalar switches the active table") {
  bornflea::kernels::force_scalar(true);
  CHECK(bornflea::kernels::selected_isa() == "scalar");
  bornflea::kernels::force_scalar(false);
}
