#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "osa/errors.hpp"
#include "osa/numkit/adam.hpp"
#include "osa/numkit/dense.hpp"
#include "osa/numkit/mlp.hpp"
#include "osa/numkit/rng.hpp"

using namespace osa;
using namespace osa::numkit;

namespace {

double max_abs_diff(const DenseMatrix& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      worst = std::max(worst, std::abs(a(r, c) - b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
    }
  }
  return worst;
}

MlpParams random_params(std::size_t d, std::size_t D, std::size_t L, std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 0.5);
  MlpParams p = MlpParams::zeros(d, D, L);
  for (auto& w : p.weights) {
    for (double& v : w.values()) v = n(gen);
  }
  return p;
}

}  // namespace

TEST_CASE("rank-1 inverse update closed forms") {
  const DenseMatrix eye = DenseMatrix::identity(2);
  const DenseMatrix a = rank1_inverse_update(eye, std::vector<double>{1.0, 0.0});
  CHECK(a(0, 0) == doctest::Approx(0.5));
  CHECK(a(1, 1) == doctest::Approx(1.0));
  CHECK(a(0, 1) == 0.0);
  CHECK(a(1, 0) == 0.0);

  CHECK(rank1_inverse_update(eye, std::vector<double>{0.0, 0.0}) == eye);
}

TEST_CASE("rank-1 inverse update errors") {
  const DenseMatrix eye = DenseMatrix::identity(2);
  CHECK_THROWS_AS(rank1_inverse_update(eye, std::vector<double>{1.0, 2.0, 3.0}), ContractViolation);
  DenseMatrix neg(1, 1, -1.0);
  CHECK_THROWS_AS(rank1_inverse_update(neg, std::vector<double>{1.0}), DegeneracyError);
}

TEST_CASE("Sherman-Morrison chain matches a direct inverse") {
  for (std::size_t d : {8u, 32u}) {
    std::mt19937_64 gen(17 + d);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix inv = DenseMatrix::identity(d);
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::vector<double> v(d);
    for (int i = 0; i < 10000; ++i) {
      for (double& x : v) x = u(gen) / std::sqrt(static_cast<double>(d));
      rank1_inverse_update_in_place(inv, v);
      const Eigen::Map<const Eigen::VectorXd> ev(v.data(), static_cast<Eigen::Index>(d));
      A += ev * ev.transpose();
    }
    const Eigen::MatrixXd direct = A.inverse();
    CAPTURE(d);
    CHECK(max_abs_diff(inv, direct) < 1e-8);
  }
}

TEST_CASE("dense helpers") {
  const DenseMatrix m(2, 2, {1.0, 2.0, 3.0, 4.0});
  const std::vector<double> v{1.0, -1.0};
  const DenseVector y = matvec(m, v);
  CHECK(y[0] == -1.0);
  CHECK(y[1] == -1.0);
  CHECK(quadratic_form(m, v) == doctest::Approx(1.0 - 2.0 - 3.0 + 4.0));
  CHECK(norm2(std::vector<double>{3.0, 4.0}) == doctest::Approx(5.0));
  DenseMatrix z(2, 2);
  add_outer(z, v);
  CHECK(z == DenseMatrix(2, 2, {1.0, -1.0, -1.0, 1.0}));
  const DenseMatrix p = matmul(m, DenseMatrix::identity(2));
  CHECK(p == m);
}

TEST_CASE("mlp_forward examples") {
  MlpParams p = MlpParams::zeros(1, 2, 2);
  p.weights[0] = DenseMatrix(2, 1, {1.0, 1.0});
  p.weights[1] = DenseMatrix(1, 2, {1.0, -1.0});
  CHECK(mlp_forward(p, std::vector<double>{3.0}) == 0.0);

  p.weights[1] = DenseMatrix(1, 2, {1.0, 1.0});
  CHECK(mlp_forward(p, std::vector<double>{-1.0}) == 0.0);
  CHECK(mlp_forward(p, std::vector<double>{3.0}) == 6.0);

  const MlpParams zero = MlpParams::zeros(4, 8, 3);
  CHECK(mlp_forward(zero, std::vector<double>{1.0, -2.0, 3.0, 0.5}) == 0.0);
}

TEST_CASE("mlp_forward rejects bad input and non-finite output") {
  MlpParams p = MlpParams::zeros(2, 2, 2);
  CHECK_THROWS_AS(mlp_forward(p, std::vector<double>{1.0}), ContractViolation);
  p.weights[0] = DenseMatrix(2, 2, {1e300, 0.0, 0.0, 0.0});
  p.weights[1] = DenseMatrix(1, 2, {1e300, 0.0});
  CHECK_THROWS_AS(mlp_forward(p, std::vector<double>{1e300, 0.0}), NumericError);
}

TEST_CASE("parameter count and flatten round trip") {
  std::mt19937_64 gen(3);
  MlpParams p = random_params(8, 16, 3, gen);
  CHECK(p.parameter_count() == 16 * 8 + 16 * 16 + 16);
  const DenseVector flat = p.flatten();
  MlpParams q = MlpParams::zeros(8, 16, 3);
  q.assign(flat.values());
  CHECK(q.weights == p.weights);
  CHECK(MlpParams::zeros(8, 16, 2).parameter_count() == 144);
}

TEST_CASE("mlp_gradient examples") {
  const MlpParams zero = MlpParams::zeros(8, 16, 2);
  const DenseVector g0 = mlp_gradient(zero, std::vector<double>(8, 0.3));
  for (double v : g0) CHECK(v == 0.0);

  MlpParams p = MlpParams::zeros(1, 2, 2);
  p.weights[0] = DenseMatrix(2, 1, {1.0, 1.0});
  p.weights[1] = DenseMatrix(1, 2, {1.0, 1.0});
  const DenseVector g = mlp_gradient(p, std::vector<double>{2.0});
  REQUIRE(g.dim() == 4);
  // Layout: W1 (2×1) then W2 (1×2).
  CHECK(g[0] == 2.0);
  CHECK(g[1] == 2.0);
  CHECK(g[2] == 2.0);
  CHECK(g[3] == 2.0);
}

TEST_CASE("mlp_gradient matches central differences") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-5;
  for (std::size_t L : {2u, 3u}) {
    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
      MlpParams p = random_params(8, 16, L, gen);
      std::vector<double> x(8);
      for (double& v : x) v = u(gen);
      const DenseVector analytic = mlp_gradient(p, x);
      DenseVector flat = p.flatten();
      std::vector<double> numeric(flat.dim());
      for (std::size_t i = 0; i < flat.dim(); ++i) {
        const double keep = flat[i];
        flat[i] = keep + h;
        p.assign(flat.values());
        const double up = mlp_forward(p, x);
        flat[i] = keep - h;
        p.assign(flat.values());
        const double down = mlp_forward(p, x);
        flat[i] = keep;
        numeric[i] = (up - down) / (2.0 * h);
      }
      p.assign(flat.values());
      double diff = 0.0;
      double scale = 0.0;
      for (std::size_t i = 0; i < numeric.size(); ++i) {
        diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
        scale = std::max({scale, analytic[i] * analytic[i], numeric[i] * numeric[i]});
      }
      const double rel = std::sqrt(diff) / std::max(std::sqrt(scale), 1e-12);
      worst = std::max(worst, rel);
    }
    CAPTURE(L);
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("mlp output is positively homogeneous of degree L") {
  std::mt19937_64 gen(5);
  for (std::size_t L : {2u, 3u}) {
    MlpParams p = random_params(4, 6, L, gen);
    const std::vector<double> x{0.3, -0.2, 0.9, 0.1};
    const double base = mlp_forward(p, x);
    for (auto& w : p.weights) {
      for (double& v : w.values()) v *= 2.0;
    }
    CHECK(mlp_forward(p, x) == doctest::Approx(base * std::pow(2.0, static_cast<double>(L))).epsilon(1e-12));
  }
}

TEST_CASE("dropout only acts in training mode") {
  std::mt19937_64 gen(8);
  MlpParams p = random_params(4, 16, 2, gen);
  p.dropout = 0.5;
  const std::vector<double> x{0.5, 0.5, -0.1, 0.2};
  RngStream rng(1, 2);
  const double eval = mlp_forward(p, x);
  CHECK(mlp_forward(p, x, false, &rng) == eval);
  bool differs = false;
  for (int i = 0; i < 20; ++i) differs |= mlp_forward(p, x, true, &rng) != eval;
  CHECK(differs);
  CHECK_THROWS_AS(mlp_forward(p, x, true, nullptr), ContractViolation);
}

TEST_CASE("accumulated gradient equals scaled mlp_gradient") {
  std::mt19937_64 gen(11);
  const MlpParams p = random_params(8, 16, 2, gen);
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4, -0.1, -0.2, 0.5, 0.05};
  std::vector<double> acc(p.parameter_count(), 1.0);
  const double out = mlp_accumulate_gradient(p, x, 0.5, acc, nullptr);
  CHECK(out == doctest::Approx(mlp_forward(p, x)));
  const DenseVector g = mlp_gradient(p, x);
  for (std::size_t i = 0; i < acc.size(); ++i) CHECK(acc[i] == doctest::Approx(1.0 + 0.5 * g[i]));
}

TEST_CASE("adam_step examples") {
  SUBCASE("zero gradient from a fresh state leaves params unchanged") {
    OptimizerState opt(3);
    std::vector<double> params{1.0, -2.0, 0.5};
    const auto before = params;
    adam_step(opt, params, std::vector<double>(3, 0.0));
    CHECK(params == before);
    CHECK(opt.steps == 1);
    for (double m : opt.first_moment) CHECK(m == 0.0);
  }
  SUBCASE("moments decay under zero gradient") {
    OptimizerState opt(1);
    std::vector<double> params{0.0};
    adam_step(opt, params, std::vector<double>{0.1});
    const double m1 = opt.first_moment[0];
    const double v1 = opt.second_moment[0];
    adam_step(opt, params, std::vector<double>{0.0});
    CHECK(opt.first_moment[0] == doctest::Approx(0.9 * m1));
    CHECK(opt.second_moment[0] == doctest::Approx(0.999 * v1));
  }
  SUBCASE("first step moves by the learning rate") {
    OptimizerState opt(1, AdamConfig{0.005});
    std::vector<double> params{1.0};
    adam_step(opt, params, std::vector<double>{0.1});
    CHECK(std::abs((1.0 - params[0]) - 0.005) < 1e-4);
  }
  SUBCASE("constant gradient moves monotonically against its sign") {
    OptimizerState opt(1);
    std::vector<double> params{0.0};
    adam_step(opt, params, std::vector<double>{-0.3});
    const double after_one = params[0];
    adam_step(opt, params, std::vector<double>{-0.3});
    CHECK(after_one > 0.0);
    CHECK(params[0] > after_one);
  }
  SUBCASE("length mismatch") {
    OptimizerState opt(2);
    std::vector<double> params{0.0, 0.0};
    CHECK_THROWS_AS(adam_step(opt, params, std::vector<double>{1.0}), ContractViolation);
  }
}

TEST_CASE("RngStream reproducibility over 1e6 draws") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  bool same = true;
  for (int i = 0; i < 1000000; ++i) same &= a.next_u64() == b.next_u64();
  CHECK(same);

  RngStream c(42, 8);
  RngStream d(42, 7);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += c.next_u64() == d.next_u64();
  CHECK(equal == 0);
}

TEST_CASE("RngStream distributions") {
  RngStream rng(1, 1);
  double sum = 0.0;
  std::size_t counts[3] = {0, 0, 0};
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    ++counts[rng.index(3)];
  }
  CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
  for (auto c : counts) CHECK(static_cast<double>(c) / 100000.0 == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("CounterRng is a pure function of its key") {
  const CounterRng a(9);
  const CounterRng b(9);
  CHECK(a.uniform(Purpose::context, 3, 100, 2) == b.uniform(Purpose::context, 3, 100, 2));
  CHECK(a.uniform(Purpose::context, 3, 100, 2) != a.uniform(Purpose::context, 3, 101, 2));
  CHECK(a.uniform(Purpose::context, 3, 100, 2) != a.uniform(Purpose::noise, 3, 100, 2));
  CHECK(a.uniform(Purpose::context, 3, 100, 2) != CounterRng(10).uniform(Purpose::context, 3, 100, 2));

  double sum = 0.0;
  double sq = 0.0;
  for (std::uint64_t t = 0; t < 100000; ++t) {
    const double z = a.standard_normal(Purpose::noise, 0, t);
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / 1e5) < 0.02);
  CHECK(sq / 1e5 == doctest::Approx(1.0).epsilon(0.02));
}
