#include <chrono>
#include <iomanip>
#include <iostream>
#include <vector>

#include "ringlab/dsl.hpp"
#include "ringlab/kernels.hpp"

using namespace ringlab;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class Par, class Ser>
void bench_kernel(const char* name, Par par, Ser ser) {
    auto t0 = Clock::now();
    auto a = par();
    double tp = ms_since(t0);
    t0 = Clock::now();
    auto b = ser();
    double ts = ms_since(t0);
    bool same = a == b;
    std::cout << "  " << std::left << std::setw(12) << name << std::right << std::fixed
              << std::setprecision(1) << std::setw(10) << tp << " ms" << std::setw(10) << ts
              << " ms   x" << std::setprecision(2) << (tp > 0 ? ts / tp : 0.0)
              << (same ? "" : "   MISMATCH") << "\n";
    if (!same) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> exprs = {
        "Mat(2, Zmod(3))",
        "GrpRing(Zmod(8), C(2)xC(2))",
        "DT(Zmod(8))",
        "Ks(Zmod(8), #2)",
    };
    if (argc > 1) {
        exprs.clear();
        for (int i = 1; i < argc; ++i) exprs.emplace_back(argv[i]);
    }
    std::cout << "kernel                 parallel    serial   speedup\n";
    for (const auto& text : exprs) {
        FiniteRing r = eval_ring(text);
        std::cout << r.name() << " (" << r.size() << " elements)\n";
        Bits u = kernels::units(r);
        bench_kernel(
            "axioms", [&] { return kernels::check_axioms(r).pass; },
            [&] { return kernels::serial::check_axioms(r).pass; });
        bench_kernel(
            "units", [&] { return kernels::units(r); },
            [&] { return kernels::serial::units(r); });
        bench_kernel(
            "jacobson", [&] { return kernels::jacobson(r, u); },
            [&] { return kernels::serial::jacobson(r, u); });
        bench_kernel(
            "delta", [&] { return kernels::delta(r, u); },
            [&] { return kernels::serial::delta(r, u); });
        bench_kernel(
            "nilpotents", [&] { return kernels::nilpotents(r); },
            [&] { return kernels::serial::nilpotents(r); });
        bench_kernel(
            "center", [&] { return kernels::center(r); },
            [&] { return kernels::serial::center(r); });
    }
    return 0;
}
