#include <benchmark/benchmark.h>

// Own main: the distro benchmark_main archive ships LTO bytecode from another GCC.
BENCHMARK_MAIN();
