#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brannulus/combinatorics.hpp"
#include "brannulus/monodromy.hpp"

namespace brannulus {

struct AnalysisOptions {
  DistinctnessOptions distinctness;
  StepPolicy policy;
  /// Repeat the pipeline at half the step size and compare combinatorial outputs.
  bool deep = false;
};

struct Check {
  enum class Status { Pass, Fail, Skipped };
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

std::string_view to_string(Check::Status s);

/// Everything the pipeline extracts that must not depend on step sizes.
struct CombinatorialOutputs {
  std::vector<Partition> chain;
  std::vector<std::vector<int>> sector_orders;
  std::vector<Permutation> sector_permutations;
  std::vector<Partition> rncp;
  std::vector<Permutation> generators;
  Permutation infinity_loop;
  bool operator==(const CombinatorialOutputs&) const = default;
};

struct Analysis {
  LiftContext ctx;
  std::vector<LevelTrace> levels;  ///< at the regular heights
  PartitionChain chain;
  DescentData descents;
  std::optional<PartitionChain> merge_chain;  ///< absent when a descent stalled
  std::vector<DirectionTrace> sectors;
  std::vector<CyclicOrder> orders;
  Factorization factorization;
  RealNoncrossingPartition rncp;
  MonodromyRep monodromy;
  Permutation infinity_loop;
  std::vector<CactusStructure> cacti;      ///< per critical height, when descents allow
  std::vector<BanyanStructure> banyans;    ///< per critical argument, when descents allow
  std::vector<Check> checks;

  bool ok() const;
  CombinatorialOutputs combinatorics() const;
};

/// Full pipeline. Throws Error on numerical aborts; invariant violations that
/// do not stop the pipeline are recorded as failed checks.
Analysis analyze(const Polynomial& p, const AnalysisOptions& opt = {});

/// Euler characteristic of the branched annulus from the cell counts and
/// critical multiplicities.
long branched_euler_characteristic(int degree, const AnnulusComplex& cells, const ComplexMultiset& critical_points);

}  // namespace brannulus
