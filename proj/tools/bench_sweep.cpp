// Benchmark: serial reference vs OpenMP sweep over the enumerated corpus.
// The two modes must produce identical results; the tool reports both times
// and fails if they disagree.

#include "plausia/search.hpp"
#include "plausia/sweep.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace plausia;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    SearchParams params;
    params.max_states = 4;
    params.prior_denominator = 3;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        auto next = [&]() { return (i + 1 < argc) ? std::atoi(argv[++i]) : 0; };
        if (arg == "--max-states") params.max_states = next();
        if (arg == "--denominator") params.prior_denominator = next();
        if (arg == "--budget") params.budget = next();
    }

    auto corpus = enumerate_models(params);
    std::vector<Value> thresholds;
    for (int k = 1; k <= 4; ++k) thresholds.push_back(Value::scalar(Rational(k, 4)));
    ModelKernel kernel = [&](const EpistemicModel& m) {
        return oracle_diff_outcome(m, thresholds);
    };

    std::cout << "corpus: " << corpus.size() << " models (max states " << params.max_states
              << ", prior denominator " << params.prior_denominator << ")\n";
#ifdef _OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "openmp: compiled out (parallel mode falls back to serial)\n";
#endif

    auto t0 = std::chrono::steady_clock::now();
    auto serial = run_sweep(corpus, kernel, ExecMode::Serial);
    double serial_s = seconds_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    auto parallel = run_sweep(corpus, kernel, ExecMode::Parallel);
    double parallel_s = seconds_since(t1);

    std::cout << "serial:   " << serial_s << " s  (" << serial.instances << " instances, "
              << serial.violations << " violations)\n";
    std::cout << "parallel: " << parallel_s << " s  (" << parallel.instances << " instances, "
              << parallel.violations << " violations)\n";
    if (parallel_s > 0) std::cout << "speedup:  " << serial_s / parallel_s << "x\n";

    if (!(serial == parallel)) {
        std::cout << "MISMATCH between serial and parallel results\n";
        return 1;
    }
    std::cout << "results identical\n";
    return 0;
}
