// OpenMP kernels against the serial generic reference paths.

#include <benchmark/benchmark.h>

#include "ssp4/family_d4.hpp"
#include "ssp4/genus2.hpp"

using namespace ssp4;

namespace {

void rosenhain(benchmark::State& st, Backend backend)
{
    const auto p = static_cast<std::uint64_t>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(enumerate_rosenhain(p, backend));
}

void d4_direct(benchmark::State& st, Backend backend)
{
    const auto p = static_cast<std::uint64_t>(st.range(0));
    D4Options opt;
    opt.backend = backend;
    for (auto _ : st)
        benchmark::DoNotOptimize(d4_enumerate_direct(p, opt));
}

} // namespace

BENCHMARK_CAPTURE(rosenhain, kernel, Backend::Kernel)->Arg(11)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(rosenhain, reference, Backend::Reference)->Arg(11)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(d4_direct, kernel, Backend::Kernel)->Arg(19)->Arg(23)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(d4_direct, reference, Backend::Reference)->Arg(19)->Arg(23)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
