// Benchmark comparing the serial reference runner against the OpenMP worker
// pool on the sampling-heavy kernels, verifying identical reports as it goes.

#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rogers/experiments.hpp"

using namespace rogers;

namespace {

double time_clt(int workers, std::int64_t samples, int d, double phi) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::CLT;
  cfg.space = SpaceKind::Affine;
  cfg.d = d;
  cfg.volume = static_cast<long long>(phi);
  cfg.samples = samples;
  cfg.seed = 1234;
  cfg.workers = workers;
  auto rep = run_clt(cfg);
  return rep.elapsed_seconds;
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t samples = argc > 1 ? std::stoll(argv[1]) : 2000;
  int d = argc > 2 ? std::stoi(argv[2]) : 12;
  double phi = argc > 3 ? std::stod(argv[3]) : 64.0;
  int max_workers = 4;
#ifdef _OPENMP
  max_workers = std::max(4, omp_get_max_threads());
#endif

  std::printf("CLT kernel: d=%d phi=%.0f samples=%lld\n", d, phi,
              static_cast<long long>(samples));
  std::printf("%-10s %-12s %-10s\n", "workers", "seconds", "speedup");

  // Serial reference first; parallel runs must match it bit for bit.
  ExperimentConfig ref_cfg;
  ref_cfg.kind = ExperimentKind::CLT;
  ref_cfg.space = SpaceKind::Affine;
  ref_cfg.d = d;
  ref_cfg.volume = static_cast<long long>(phi);
  ref_cfg.samples = samples;
  ref_cfg.seed = 1234;
  ref_cfg.workers = 1;
  auto ref = run_clt(ref_cfg);
  std::printf("%-10d %-12.3f %-10s\n", 1, ref.elapsed_seconds, "1.00x");

  for (int w = 2; w <= max_workers; w *= 2) {
    ExperimentConfig cfg = ref_cfg;
    cfg.workers = w;
    auto rep = run_clt(cfg);
    auto a = ref.to_json();
    auto b = rep.to_json();
    a.erase("elapsed_seconds");
    b.erase("elapsed_seconds");
    a["config"].erase("workers");
    b["config"].erase("workers");
    const char* match = (a == b) ? "" : "  MISMATCH vs serial reference!";
    std::printf("%-10d %-12.3f %.2fx%s\n", w, rep.elapsed_seconds,
                ref.elapsed_seconds / rep.elapsed_seconds, match);
  }
  return 0;
}
