// Times the two execution modes of the heavy kernels against each other:
// the pairwise world comparison behind induced_order and the axiom
// instance enumeration behind check_cpm_axioms. Both have a serial
// reference path kept for testing; this target reports what the parallel
// path buys (or costs) on the current machine.
//
//   bench_kernels [n_vars] [n_axiom_worlds] [repeats]
//
// Defaults: 10 variables (1024 worlds), 9 worlds for the axiom check,
// 3 repeats. Reported numbers are the best wall time per mode.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "excm/axioms.hpp"
#include "excm/exec.hpp"
#include "excm/network.hpp"
#include "excm/preorder.hpp"

using namespace excm;

namespace {

double best_ms(int repeats, const std::function<void()>& work) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    work();
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    if (ms < best) best = ms;
  }
  return best;
}

// n independent binary variables, each with its own two-atom chain. The
// induced order is the n-cube, and every world pair goes through the
// product comparison.
struct CubeInstance {
  AtomOrder atoms;
  PlausibilisticNetwork net;
};

CubeInstance cube_instance(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> declared;
  std::vector<Variable> vars;
  for (int i = 0; i < n; ++i) {
    std::string hi = "a" + std::to_string(i) + "+";
    std::string lo = "a" + std::to_string(i) + "-";
    names.push_back(hi);
    names.push_back(lo);
    declared.emplace_back(hi, lo);
    vars.push_back({"X" + std::to_string(i), {0, 1}});
  }
  CubeInstance out{close_atom_order(names, declared),
                   PlausibilisticNetwork(vars, {})};
  for (int i = 0; i < n; ++i) {
    const std::string& x = out.net.variables()[i].name;
    out.net.set_entry(x, 0, {}, out.atoms.id("a" + std::to_string(i) + "+"));
    out.net.set_entry(x, 1, {}, out.atoms.id("a" + std::to_string(i) + "-"));
  }
  return out;
}

Preorder random_carrier(std::size_t n_worlds) {
  std::mt19937_64 rng(12345);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n_worlds; ++i)
    for (std::size_t j = 0; j < n_worlds; ++j)
      if (i != j && std::uniform_real_distribution<>(0, 1)(rng) < 0.25)
        pairs.emplace_back(i, j);
  return Preorder::from_pairs(n_worlds, pairs);
}

void report(const char* kernel, double serial_ms, double parallel_ms) {
  std::printf("%-18s serial %10.2f ms   parallel %10.2f ms   speedup %.2fx\n",
              kernel, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  int n_vars = argc > 1 ? std::atoi(argv[1]) : 10;
  int n_axiom_worlds = argc > 2 ? std::atoi(argv[2]) : 9;
  int repeats = argc > 3 ? std::atoi(argv[3]) : 3;
  if (n_vars < 1 || n_vars > 12 || n_axiom_worlds < 2 ||
      n_axiom_worlds > 10 || repeats < 1) {
    std::fprintf(stderr,
                 "usage: bench_kernels [n_vars<=12] [axiom_worlds<=10] "
                 "[repeats]\n");
    return 2;
  }

#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: not compiled in\n");
#endif
  std::printf("induced order over %d variables (%zu worlds), axioms on %d "
              "worlds, best of %d\n\n",
              n_vars, std::size_t{1} << n_vars, n_axiom_worlds, repeats);

  CubeInstance cube = cube_instance(n_vars);
  std::size_t cap = std::size_t{1} << n_vars;
  NormalityOrder serial_order =
      induced_order(cube.net, cube.atoms, cap, Exec::serial);
  NormalityOrder parallel_order =
      induced_order(cube.net, cube.atoms, cap, Exec::parallel);
  for (std::size_t i = 0; i < serial_order.worlds.size(); ++i)
    for (std::size_t j = 0; j < serial_order.worlds.size(); ++j)
      if (serial_order.order.geq(i, j) != parallel_order.order.geq(i, j)) {
        std::fprintf(stderr, "modes disagree on the induced order\n");
        return 1;
      }
  double order_serial = best_ms(repeats, [&] {
    (void)induced_order(cube.net, cube.atoms, cap, Exec::serial);
  });
  double order_parallel = best_ms(repeats, [&] {
    (void)induced_order(cube.net, cube.atoms, cap, Exec::parallel);
  });
  report("induced-order", order_serial, order_parallel);

  Preorder carrier = random_carrier(static_cast<std::size_t>(n_axiom_worlds));
  std::size_t axiom_cap = static_cast<std::size_t>(n_axiom_worlds);
  AxiomReport sr = check_cpm_axioms(carrier, axiom_cap, Exec::serial);
  AxiomReport pr = check_cpm_axioms(carrier, axiom_cap, Exec::parallel);
  for (std::size_t i = 0; i < sr.axioms.size(); ++i)
    if (sr.axioms[i].passed != pr.axioms[i].passed ||
        sr.axioms[i].instances != pr.axioms[i].instances) {
      std::fprintf(stderr, "modes disagree on the axiom report\n");
      return 1;
    }
  double axiom_serial = best_ms(repeats, [&] {
    (void)check_cpm_axioms(carrier, axiom_cap, Exec::serial);
  });
  double axiom_parallel = best_ms(repeats, [&] {
    (void)check_cpm_axioms(carrier, axiom_cap, Exec::parallel);
  });
  report("axiom-checks", axiom_serial, axiom_parallel);
  return 0;
}
