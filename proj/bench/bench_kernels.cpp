// Serial vs OpenMP timings for the data-parallel kernels.
// Usage: bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include <omp.h>

#include "protpref/axiom_audit.hpp"
#include "protpref/contacts.hpp"
#include "protpref/external_agg.hpp"

using namespace protpref;

namespace {

template <typename F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

ProteinStructure random_protein(int residues, std::uint64_t seed) {
  static const char* names[] = {"ALA", "CYS", "ASP", "GLU", "PHE", "GLY", "HIS", "ILE", "LYS", "LEU",
                                "MET", "ASN", "PRO", "GLN", "ARG", "SER", "THR", "VAL", "TRP", "TYR"};
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> step(-2.2, 2.2);
  std::string text;
  double x = 0, y = 0, z = 0;
  char line[96];
  for (int k = 0; k < residues; ++k) {
    x += step(gen);
    y += step(gen);
    z += step(gen);
    std::snprintf(line, sizeof line, "ATOM  %5d  CA  %3s A%4d    %8.3f%8.3f%8.3f  1.00  0.00           C\n", k + 1,
                  names[gen() % 20], k + 1, x, y, z);
    text += line;
  }
  return parse_pdb_text(text, "bench");
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());

  const auto protein = random_protein(3000, 1);
  ContactConfig config;
  config.threshold_tau = 8.0;
  const auto scorer = Scorer::unit_count();
  row("extract_instances (3000 residues)",
      best_of(repeats, [&] { extract_instances_serial(protein, config, scorer); }),
      best_of(repeats, [&] { extract_instances(protein, config, scorer); }));

  SynthSpec spec;
  spec.m = 210;
  spec.n = 400;
  spec.seed = 2;
  const auto profile = generate(spec);
  row("majority_tournament (m=210, n=400)", best_of(repeats, [&] { majority_tournament_serial(profile); }),
      best_of(repeats, [&] { majority_tournament(profile); }));

  const auto kemeny = make_rule("kemeny");
  const auto space = SearchSpace::exhaustive(3, 3);
  row("audit proximity (kemeny, 3x3)",
      best_of(repeats, [&] { audit(kemeny, AxiomId::proximity_preservation, space, Exec::serial); }),
      best_of(repeats, [&] { audit(kemeny, AxiomId::proximity_preservation, space, Exec::parallel); }));

  const auto may = make_rule("may");
  const auto wide = SearchSpace::exhaustive(4, 4);
  row("audit anonymity (may, 4x4)",
      best_of(repeats, [&] { audit(may, AxiomId::anonymity, wide, Exec::serial); }),
      best_of(repeats, [&] { audit(may, AxiomId::anonymity, wide, Exec::parallel); }));
  return 0;
}
