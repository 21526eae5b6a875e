#include "curvelab/suite.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "curvelab/errors.hpp"
#include "curvelab/generators.hpp"

namespace curvelab {

namespace {

constexpr int kImmersionSamples = 4096;

VerificationReport run_trig(const SuiteOptions& o, Rng& rng, int target, const Tolerances& tol) {
  const Curve curve{{CurveComponent(random_trig_curve(rng, target))}};
  check_immersed(curve, kImmersionSamples, tol.genericity);
  const Chart chart;
  switch (o.check) {
    case Check::Affine: return verify_affine(curve, chart, tol);
    case Check::Pencil: return verify_pencil(curve, chart, {}, o.random_lines, rng(), tol);
    case Check::Jumps: return verify_jump_catalog(curve, chart, o.jump_samples, tol);
    default: return verify_projective(curve, chart, tol);
  }
}

}  // namespace

Rng suite_rng(unsigned long long seed, int index) {
  std::seed_seq seq{static_cast<unsigned>(seed), static_cast<unsigned>(seed >> 32), static_cast<unsigned>(index)};
  return Rng(seq);
}

int SuiteResult::passed() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.passed(); }));
}

int SuiteResult::rejected() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.rejected(); }));
}

int SuiteResult::failed() const { return static_cast<int>(cases.size()) - passed() - rejected(); }

double SuiteResult::rejection_rate() const { return cases.empty() ? 0.0 : double(rejected()) / cases.size(); }

int suite_target(Check check, int index) {
  switch (check) {
    case Check::Affine: return 0;
    case Check::Projective: return 1 + index % 3;
    case Check::Pencil:
    case Check::Jumps: return index % 4;
    case Check::Algebraic: return 2 * (index % 3);
    case Check::Nodal: return index % 2;
  }
  return 0;
}

SuiteCase run_case(const SuiteOptions& options, int index, const Tolerances& tol) {
  SuiteCase out;
  out.index = index;
  out.target_a = suite_target(options.check, index);
  Rng rng = suite_rng(options.seed, index);
  try {
    if (options.check == Check::Algebraic)
      out.report = verify_algebraic(random_quartic(rng, out.target_a), Chart(), tol);
    else if (options.check == Check::Nodal)
      out.report = verify_nodal(random_nodal_cubic(rng, out.target_a == 1), 1, Chart(), tol);
    else
      out.report = run_trig(options, rng, out.target_a, tol);
  } catch (const CurveError& e) {
    out.error = e.code();
    out.message = e.what();
  }
  return out;
}

SuiteResult run_suite(const SuiteOptions& options, const Tolerances& tol) {
  SuiteResult result;
  result.check = options.check;
  const int threads =
      std::max(1, options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency()));
  for (int begin = 0; begin < options.count; begin += threads) {
    std::vector<std::future<SuiteCase>> batch;
    for (int k = begin; k < std::min(options.count, begin + threads); ++k)
      batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                 [&options, &tol, k] { return run_case(options, k, tol); }));
    for (auto& f : batch) result.cases.push_back(f.get());
  }
  return result;
}

}  // namespace curvelab
