// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "grand/convolution.hpp"
#include "grand/discrete.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace grand;
using testing_support::Gen;

namespace {

constexpr double kReductionTol = 1e-8;
constexpr double kEmbeddingSlack = 1e-10;
constexpr double kClosureLimit = 1e-4;
constexpr double kMassSlack = 1e-12;
constexpr double kYoungSlack = 1e-12;
constexpr double kWitnessTol = 1e-6;
constexpr double kOracleTol = 1e-10;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_err(double got, double want) {
  const double scale = std::max(std::fabs(want), 1e-300);
  return std::fabs(got - want) / scale;
}

std::vector<std::size_t> block_starts(std::size_t n, std::size_t block) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < n; s += block) out.push_back(s);
  return out;
}

SpacePtr random_probability_space(Gen& gen, std::size_t n) {
  auto w = gen.weights(n);
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return testing_support::weighted_space(w);
}

Outcome theta_zero_reduction() {
  Gen gen(1001);
  Outcome o;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = gen.index(8, 256);
    const SpacePtr space = gen.coin() ? random_probability_space(gen, n)
                                      : share(MeasureSpace::probability(n));
    const SampledFunction f(space, gen.coin() ? gen.spiky(n) : gen.values(n));
    for (double p : {1.5, 2.0, 3.0}) {
      const GrandExponent e(p, 0.0);
      const double want = lp_norm(f, p);
      const double err = rel_err(grand_norm(f, e, EpsilonGrid::standard(e)), want);
      worst = std::max(worst, err);
      o.require(err <= kReductionTol, "relative error " + sci(err));
    }
  }
  o.detail += std::string(o.detail.empty() ? "" : "; ") + "worst relative error " + sci(worst);
  return o;
}

Outcome embedding_chain() {
  Gen gen(1002);
  Outcome o;
  std::size_t checks = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = gen.index(1, 32);
    const SpacePtr space = testing_support::weighted_space(gen.weights(n));
    const SampledFunction f(space, gen.coin() ? gen.spiky(n) : gen.values(n));
    const GrandExponent e(gen.uniform(1.1, 5.0), gen.coin() ? 0.0 : gen.uniform(0.1, 2.0));
    const EpsilonGrid grid = EpsilonGrid::standard(e);
    const double gn = grand_norm(f, e, grid);
    const double lp = lp_norm(f, e.p());
    for (double eps : grid.values()) {
      const EmbeddingConstants c = embedding_constants(e, eps, *space, grid);
      o.require(lp_norm(f, e.p() - eps) <= c.c_lower * gn * (1.0 + kEmbeddingSlack),
                "lower embedding failed at eps " + std::to_string(eps));
      o.require(gn <= c.c_upper * lp * (1.0 + kEmbeddingSlack),
                "upper embedding failed at eps " + std::to_string(eps));
      ++checks;
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " (f, eps) pairs";
  return o;
}

Outcome closure() {
  Gen gen(1003);
  Outcome o;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen.index(1, 64);
    const SampledFunction f(share(MeasureSpace::probability(n)), gen.values(n));
    const double p = std::array<double, 3>{1.5, 2.0, 2.5}[gen.index(0, 2)];
    const GrandExponent e(p, 1.0);
    const ClosureResult r = closure_criterion(f, e, EpsilonGrid::standard(e));
    worst = std::max(worst, r.limit_estimate);
    o.require(r.applicable && r.tail.size() == 5, "closure criterion not applicable");
    o.require(r.limit_estimate < kClosureLimit,
              "limit estimate " + sci(r.limit_estimate));
    o.require(r.tail_monotone, "tail not monotone");
  }
  if (o.pass) o.detail = "largest limit estimate " + sci(worst);
  return o;
}

Outcome sequence_space() {
  Gen gen(1004);
  Outcome o;
  const auto lambda_of = [&](std::size_t k) {
    return SampledFunction(share(MeasureSpace::counting(k)),
                           gen.coin() ? gen.spiky(k) : gen.values(k));
  };
  for (int t = 0; t < 1000; ++t) {
    const std::size_t k = gen.index(1, 24);
    auto space = share(MeasureSpace::uniform(4 * k, 0.25, Topology::cyclic));
    const Window u = Window::contiguous(*space, 0, 4);
    const SampledFunction lambda = lambda_of(k);
    const GrandExponent e(gen.uniform(1.1, 5.0), gen.coin() ? 0.0 : gen.uniform(0.1, 3.0));
    const EpsilonGrid grid = EpsilonGrid::standard(e);
    o.require(u.mass() == 1.0, "window mass is not exactly 1");
    o.require(discrete_space_norm(lambda, u, block_starts(4 * k, 4), *space, e, grid) ==
                  grand_sequence_norm(lambda, e, grid),
              "mu(U) = 1 norm differs from the sequence norm");
  }
  for (double mass : {0.25, 4.0}) {
    for (int t = 0; t < 1000; ++t) {
      const std::size_t k = gen.index(1, 24);
      auto space = share(MeasureSpace::uniform(4 * k, mass / 4.0, Topology::cyclic));
      const Window u = Window::contiguous(*space, 0, 4);
      const SampledFunction lambda = lambda_of(k);
      const GrandExponent e(gen.uniform(1.1, 5.0), gen.coin() ? 0.0 : gen.uniform(0.1, 3.0));
      const EpsilonGrid grid = EpsilonGrid::standard(e);
      const double d = discrete_space_norm(lambda, u, block_starts(4 * k, 4), *space, e, grid);
      const double s = grand_sequence_norm(lambda, e, grid);
      const MassBounds b = mass_bounds(u.mass(), e);
      o.require(b.m_low * s <= d * (1.0 + kMassSlack) && d <= b.m_high * s * (1.0 + kMassSlack),
                "mass bounds violated at mu(U) = " + std::to_string(mass));
    }
  }
  if (o.pass) o.detail = "1000 bit-exact, 2000 bounded";
  return o;
}

Outcome amalgam_equivalence() {
  Gen gen(1005);
  Outcome o;
  struct Exps {
    double p, q, theta;
  };
  std::size_t reports = 0;
  for (const auto& [n, block] : {std::pair<std::size_t, std::size_t>{16, 4}, {64, 8}}) {
    auto z = share(MeasureSpace::probability(n, Topology::cyclic));
    const Bupu psi = make_uniform_bupu(z, block);
    const Window q = Window::contiguous(*z, 0, block);
    for (std::size_t x = 0; x < n; ++x) {
      o.require(translate_window(q, x, *z).mass() == q.mass(),
                "mu(Q+x) != mu(Q) at x = " + std::to_string(x));
    }
    for (const Exps c : {Exps{2, 2, 0}, Exps{2, 2, 1}, Exps{1.5, 3, 1}}) {
      const GrandExponent local(c.p, c.theta), global(c.q, c.theta);
      const EpsilonGrid gp = EpsilonGrid::standard(local), gq = EpsilonGrid::standard(global);
      for (int t = 0; t < 500; ++t) {
        const SampledFunction f(z, gen.coin() ? gen.spiky(n) : gen.values(n));
        const EquivalenceReport r = equivalence_report(f, q, psi, local, global, gp, gq);
        o.require(r.within_bounds, "ratio outside reported bounds on Z_" + std::to_string(n));
        ++reports;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(reports) + " reports within bounds, translate masses exact";
  return o;
}

Outcome grand_submultiplicativity() {
  Gen gen(1006);
  Outcome o;
  double worst = 0.0;
  for (std::size_t n : {8u, 16u, 64u}) {
    const auto group = FiniteAbelianGroup::cyclic(n, HaarNormalization::probability);
    for (const auto& [p, theta] : {std::pair{2.0, 0.0}, {2.0, 1.0}, {3.0, 1.0}}) {
      const GrandExponent e(p, theta);
      const EpsilonGrid grid = EpsilonGrid::standard(e);
      for (int t = 0; t < 1000; ++t) {
        const SampledFunction f = group.function(gen.coin() ? gen.spiky(n) : gen.values(n));
        const SampledFunction g = group.function(gen.coin() ? gen.spiky(n) : gen.values(n));
        const SubmultiplicativityReport r = submultiplicativity_check(f, g, group, e, grid);
        const double ratio = r.ratio.value_or(0.0);
        worst = std::max(worst, ratio);
        o.require(ratio <= 1.0 + kYoungSlack, "ratio " + std::to_string(ratio));
        for (const YoungRow& y : r.per_eps) o.require(y.pass, "a Young row failed");
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max ratio %.15g", worst);
  o.detail += (o.detail.empty() ? "" : "; ") + std::string(buf);
  return o;
}

Outcome witness() {
  Outcome o;
  // r(2) by direct convolution on a cyclic group long enough not to wrap.
  const std::size_t m = 2;
  oracle::Vec chi(4 * m, 0.0);
  for (std::size_t k = 0; k < m; ++k) chi[k] = 1.0;
  const oracle::Vec ones(chi.size(), 1.0);
  const double direct = oracle::lp(ones, oracle::convolve(chi, chi, 1.0), 2.0) /
                        std::pow(oracle::lp(ones, chi, 2.0), 2.0);
  const double r2 = witness_ratio(2, 2.0);
  o.require(std::fabs(r2 - direct) <= kWitnessTol, "r(2) = " + std::to_string(r2));
  o.require(std::fabs(direct - 1.2247) <= 1e-4, "direct value " + std::to_string(direct));
  double prev = 0.0;
  for (std::size_t k : {2u, 4u, 8u, 16u, 32u}) {
    const double r = witness_ratio(k, 2.0);
    o.require(r > prev, "not increasing at m = " + std::to_string(k));
    prev = r;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "r(2) = %.10f, r(32) = %.6f", r2, prev);
  if (o.pass) o.detail = buf;
  return o;
}

/// (sum_x w (sum_{y in Q+x} w |f(y)|^p)^(q/p))^(1/q) on a probability Z_n.
double classical_amalgam(const std::vector<double>& f, std::size_t size, double p, double q) {
  const std::size_t n = f.size();
  const double w = 1.0 / static_cast<double>(n);
  double outer = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    double inner = 0.0;
    for (std::size_t k = 0; k < size; ++k) inner += w * std::pow(std::fabs(f[(x + k) % n]), p);
    outer += w * std::pow(inner, q / p);
  }
  return std::pow(outer, 1.0 / q);
}

Outcome amalgam_submultiplicativity() {
  Gen gen(1008);
  Outcome o;
  const std::size_t n = 16, block = 4;
  const auto group = FiniteAbelianGroup::cyclic(n, HaarNormalization::probability);
  const Window q = Window::contiguous(*group.space(), 0, block);
  double worst = 0.0;
  double c_seen = 0.0;
  for (double theta : {0.0, 1.0}) {
    const GrandExponent e(2.0, theta);
    const EpsilonGrid grid = EpsilonGrid::standard(e);
    for (int t = 0; t < 500; ++t) {
      const SampledFunction f = group.function(gen.coin() ? gen.spiky(n) : gen.values(n));
      const SampledFunction g = group.function(gen.coin() ? gen.spiky(n) : gen.values(n));
      const auto r = amalgam_submultiplicativity_check(f, g, group, q, e, e, grid, grid);
      const double ratio = r.ratio.value_or(0.0);
      worst = std::max(worst, ratio / r.constant_c);
      c_seen = r.constant_c;
      o.require(r.pass && ratio <= r.constant_c, "ratio " + std::to_string(ratio) + " above C");
    }
  }

  // theta = 0: the check must agree with the classical W(L^2, L^2) norm on the
  // group, and the classical block form obeys the same inequality once the
  // continuous/block equivalence constants measured on this sample are applied.
  const GrandExponent e0(2.0, 0.0);
  const EpsilonGrid g0 = EpsilonGrid::standard(e0);
  double a_max = 0.0, a_min = INFINITY, block_ratio_max = 0.0;
  const std::vector<double> w(n, 1.0 / n);
  const auto measure = [&](const std::vector<double>& v) {
    const double cont = classical_amalgam(v, block, 2.0, 2.0);
    const double disc = oracle::classical_block_amalgam(w, v, block, 2.0, 2.0);
    if (disc > 0.0) {
      a_max = std::max(a_max, cont / disc);
      a_min = std::min(a_min, cont / disc);
    }
    return disc;
  };
  double c0 = 0.0;
  for (int t = 0; t < 500; ++t) {
    const auto fv = gen.coin() ? gen.spiky(n) : gen.values(n);
    const auto gv = gen.coin() ? gen.spiky(n) : gen.values(n);
    const SampledFunction f = group.function(fv), g = group.function(gv);
    const auto r = amalgam_submultiplicativity_check(f, g, group, q, e0, e0, g0, g0);
    c0 = r.constant_c;
    const auto fg = oracle::convolve(fv, gv, 1.0 / n);
    const double lhs = classical_amalgam(fg, block, 2.0, 2.0);
    const double rhs = classical_amalgam(fv, block, 2.0, 2.0) * classical_amalgam(gv, block, 2.0, 2.0);
    o.require(rel_err(r.lhs, lhs) <= kOracleTol && rel_err(r.rhs, rhs) <= kOracleTol,
              "theta = 0 check differs from the classical amalgam norm");
    const double df = measure(fv), dg = measure(gv), dfg = measure(fg);
    if (df > 0.0 && dg > 0.0) block_ratio_max = std::max(block_ratio_max, dfg / (df * dg));
  }
  const double classical_bound = c0 * a_max * a_max / a_min;
  o.require(block_ratio_max <= classical_bound,
            "classical block ratio " + std::to_string(block_ratio_max) + " above " +
                std::to_string(classical_bound));

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "C = %g, max ratio/C %.4f; classical block ratio %.4f <= %.4f", c_seen, worst,
                block_ratio_max, classical_bound);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome oracle_equivalence() {
  Gen gen(1009);
  Outcome o;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen.index(1, 32);
    const double theta = gen.coin() ? 0.0 : gen.uniform(0.1, 2.0);
    const double p = gen.uniform(1.1, 4.0);

    const auto w = gen.weights(n);
    const auto v = gen.coin() ? gen.spiky(n) : gen.values(n);
    const SampledFunction f(testing_support::weighted_space(w), v);
    const GrandExponent e(p, theta);
    const double gn = rel_err(grand_norm(f, e, EpsilonGrid::standard(e)), oracle::grand(w, v, p, theta));

    const std::size_t block = gen.index(1, 4);
    const std::size_t m = block * gen.index(1, std::max<std::size_t>(1, 32 / block));
    auto z = share(MeasureSpace::probability(m, Topology::cyclic));
    const auto zv = gen.spiky(m);
    const double q = gen.uniform(1.1, 4.0);
    const double theta_a = gen.uniform(0.1, 2.0);
    const GrandExponent local(p, theta_a), global(q, theta_a);
    const double da = discrete_amalgam_norm(SampledFunction(z, zv), make_uniform_bupu(z, block), local,
                                            global, EpsilonGrid::standard(local),
                                            EpsilonGrid::standard(global));
    const double am = rel_err(da, oracle::block_amalgam(testing_support::weights_of(*z), zv, block, p, q,
                                                        theta_a));

    const auto group = FiniteAbelianGroup::cyclic(
        n, gen.coin() ? HaarNormalization::probability : HaarNormalization::counting);
    const auto a = gen.values(n, -5.0, 5.0);
    const auto b = gen.values(n, -5.0, 5.0);
    const auto want = oracle::convolve(a, b, group.haar_weight());
    const auto got = convolve(group.function(a), group.function(b), group);
    double cv = 0.0;
    double scale = 0.0;
    for (double x : want) scale = std::max(scale, std::fabs(x));
    for (std::size_t i = 0; i < n; ++i) cv = std::max(cv, std::fabs(got[i] - want[i]) / scale);

    worst = std::max({worst, gn, am, cv});
    o.require(gn <= kOracleTol, "grand_norm off by " + std::to_string(gn));
    o.require(am <= kOracleTol, "discrete_amalgam_norm off by " + std::to_string(am));
    o.require(cv <= kOracleTol, "convolve off by " + std::to_string(cv));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst relative error %.3g", worst);
  o.detail += (o.detail.empty() ? "" : "; ") + std::string(buf);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"theta = 0 reduces to the Lebesgue norm", theta_zero_reduction},
      {"embedding sandwich at every grid eps", embedding_chain},
      {"closure criterion for theta = 1", closure},
      {"discrete sequence space and mass bounds", sequence_space},
      {"continuous/discrete amalgam equivalence", amalgam_equivalence},
      {"grand norm submultiplicativity", grand_submultiplicativity},
      {"non-compact witness", witness},
      {"amalgam submultiplicativity", amalgam_submultiplicativity},
      {"brute-force oracle agreement", oracle_equivalence},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s (%s) [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
