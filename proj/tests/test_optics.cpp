#include <doctest.h>

#include <numbers>

#include "mzbell/optics.hpp"
#include "mzbell/sampling.hpp"
#include "support.hpp"

using namespace mzbell;
using testing::near;

namespace {
constexpr double pi = std::numbers::pi;
const double r2 = 1.0 / std::numbers::sqrt2;
const Amplitude I{0.0, 1.0};
}

TEST_CASE("beam splitter") {
  const auto bs = beam_splitter();
  const auto out = bs * PortVector2::basis(0);
  CHECK(near(out[0], r2, 1e-15));
  CHECK(near(out[1], I * r2, 1e-15));
  CHECK(is_unitary(bs, 1e-15));
  const auto twice = bs * bs * PortVector2::basis(0);
  CHECK(near(twice[0], 0.0));
  CHECK(near(twice[1], I));
}

TEST_CASE("phase retarder") {
  CHECK(max_abs_difference(phase_retarder(0.0), Complex2Matrix::identity()) == 0.0);
  CHECK(max_abs_difference(phase_retarder(pi), Complex2Matrix{-1.0, 0.0, 0.0, 1.0}) <= 1e-15);
  const double t = pi / 3;
  const auto raw = beam_splitter() * phase_retarder(t) * beam_splitter();
  CHECK(max_abs_difference(raw, mach_zehnder_global_factor(t) * mach_zehnder(-t)) <= 1e-12);
}

TEST_CASE("Mach-Zehnder detection from port 0") {
  auto probs = [](double t) { return (mach_zehnder(t) * PortVector2::basis(0)).probabilities(); };
  CHECK(max_abs_difference(mach_zehnder(0.0), Complex2Matrix{0.0, 1.0, 1.0, 0.0}) == 0.0);
  CHECK(near(probs(0.0)[1], 1.0));
  CHECK(near(probs(pi)[0], 1.0));
  CHECK(near(mach_zehnder(pi)(0, 0), -1.0));
  CHECK(near(probs(pi / 2)[0], 0.5));
  CHECK(near(probs(pi / 2)[1], 0.5));
}

TEST_CASE("path phase operator") {
  CHECK(max_abs_difference(path_phase_operator(0.0, 0.0, 2.0), Complex2Matrix::identity()) == 0.0);
  CHECK(max_abs_difference(path_phase_operator(pi, 0.0, 1.0), Complex2Matrix{-1.0, 0.0, 0.0, 1.0}) <= 1e-15);
  sampling::Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const double iu = sampling::angle(rng), id = sampling::angle(rng), mu = sampling::uniform(rng, -3, 3);
    const auto t = path_phase_operator(iu, id, mu);
    CHECK(is_unitary(t, 1e-15));
    CHECK(near(t(0, 0) / t(1, 1), std::polar(1.0, mu * (iu + id))));
    // reversed lower path: id = -id', ratio depends on the loop integral iu + id'
    const double id_rev = sampling::angle(rng);
    const auto tr = path_phase_operator(iu, -id_rev, mu);
    CHECK(near(tr(0, 0) / tr(1, 1), std::polar(1.0, mu * (iu - id_rev))));
  }
}

TEST_CASE("spin loop phase") {
  CHECK(spin_loop_phase(Spin::Up, 2.0, 0.0) == Amplitude(1.0, 0.0));
  CHECK(near(spin_loop_phase(Spin::Up, 1.0, pi / 2), -I));
  CHECK(near(spin_loop_phase(Spin::Down, 1.0, pi / 2), I));
  sampling::Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const double mu = sampling::uniform(rng, -5, 5), lambda = sampling::angle(rng);
    for (Spin s : {Spin::Up, Spin::Down})
      CHECK(near(spin_loop_phase(s, mu, lambda) * spin_loop_phase(flipped(s), mu, lambda), 1.0, 1e-15));
  }
}

TEST_CASE("custom beam splitter") {
  const auto bs = beam_splitter();
  CHECK_NOTHROW(custom_beam_splitter({bs(0, 0), bs(0, 1), bs(1, 0), bs(1, 1)}));

  const auto c = polarizing_beam_splitter_coefficients(0.0, 0.0);
  CHECK(near(c[0], 0.0));
  CHECK(near(c[1], 0.0));
  CHECK(near(c[2], I * r2));
  CHECK(near(c[3], r2));
  try {
    custom_beam_splitter(c);
    FAIL("expected NonUnitaryError");
  } catch (const NonUnitaryError& e) {
    CHECK(near(e.deviation(), 0.5));
  }
  CHECK_THROWS_AS(custom_beam_splitter({0.0, 0.0, 0.0, 0.0}), NonUnitaryError);
}

TEST_CASE("spin eigenstates") {
  const auto [up0, down0] = spin_eigenstates(0.0);
  CHECK(near(up0[0], -r2));
  CHECK(near(up0[1], r2));
  CHECK(near(down0[0], r2));
  CHECK(near(down0[1], r2));

  const auto [up, down] = spin_eigenstates(1.2345);
  CHECK(near(inner_product(up, down), 0.0));

  sampling::Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    const auto [u, d] = spin_eigenstates(sampling::angle(rng));
    CHECK(near(u.norm(), 1.0));
    CHECK(near(d.norm(), 1.0));
  }
}

TEST_CASE("constructor properties on random angles") {
  sampling::Rng rng(13);
  for (int k = 0; k < 1000; ++k) {
    const double t = sampling::angle(rng), t2 = sampling::angle(rng);
    CHECK(is_unitary(beam_splitter() * phase_retarder(t)));
    CHECK(is_unitary(mach_zehnder(t)));
    CHECK(near(std::abs(mach_zehnder_global_factor(t)), 1.0));
    const auto raw = beam_splitter() * phase_retarder(t) * beam_splitter();
    CHECK(max_abs_difference((1.0 / mach_zehnder_global_factor(t)) * raw, mach_zehnder(-t)) <= 1e-12);
    CHECK(max_abs_difference(phase_retarder(t) * phase_retarder(t2), phase_retarder(t + t2)) <= 1e-12);
  }
}

TEST_CASE("spin helpers") {
  CHECK(sign(Spin::Up) == 1);
  CHECK(sign(Spin::Down) == -1);
  CHECK(flipped(Spin::Up) == Spin::Down);
}
