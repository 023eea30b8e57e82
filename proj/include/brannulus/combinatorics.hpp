#pragma once

#include <optional>
#include <vector>

#include "brannulus/lifting.hpp"
#include "brannulus/permutation.hpp"

namespace brannulus {

/// Set partition of {0, ..., n-1}. Kept canonical: blocks sorted internally
/// and ordered by their smallest element.
struct Partition {
  std::vector<std::vector<int>> blocks;

  static Partition discrete(int n);
  static Partition trivial(int n);
  static Partition from_blocks(std::vector<std::vector<int>> blocks);

  int size() const;  ///< number of labelled elements
  bool is_discrete() const;
  bool is_trivial() const;
  std::vector<std::vector<int>> nontrivial_blocks() const;
  bool operator==(const Partition& other) const = default;
};

/// a <= b in refinement order.
bool refines(const Partition& a, const Partition& b);

/// Minimal union-find over {0, ..., n-1}.
class DisjointSets {
 public:
  explicit DisjointSets(int n);
  int find(int x);
  void unite(int a, int b);
  Partition partition();

 private:
  std::vector<int> parent_;
};

struct PartitionChain {
  std::vector<Partition> partitions;  ///< one per open edge of I_p, bottom to top
};

struct CyclicOrder {
  std::vector<int> sequence;  ///< root ids counterclockwise, smallest id first
  int sector = 0;
};

struct Factorization {
  int base_sector = 0;
  /// Linear orders L_0 ... L_k along consecutive edges of the circle at
  /// infinity; L_k is L_0 shifted by one position.
  std::vector<std::vector<int>> linear_orders;
  /// sigma_j relates L_{j-1} and L_j by L_j[i] = L_{j-1}[sigma_j(i)].
  std::vector<Permutation> sector_permutations;
  /// Critical argument crossed by each sector permutation, in [0, 2pi).
  std::vector<double> crossed_arguments;
  /// sigma_1 o sigma_2 o ... o sigma_k; the long cycle (1 2 ... d).
  Permutation product;
};

struct RealNoncrossingPartition {
  struct Entry {
    double argument = 0.0;  ///< critical argument in [0, 2pi)
    Partition partition;    ///< on infinity labels 0 .. d-1
  };
  std::vector<Entry> entries;  ///< every other argument is implicitly discrete
};

struct CactusStructure {
  struct Cycle {
    int covering_degree = 0;
    std::vector<int> roots;
  };
  struct BranchVertex {
    int critical_point = -1;
    int multiplicity = 0;
    int valence = 0;          ///< 2 x number of cycles through the vertex
    std::vector<int> cycles;  ///< distinct cycles the vertex lies on
  };
  struct Component {
    std::vector<int> cycles;
    std::vector<int> vertices;
  };
  double height = 0.0;
  std::vector<Cycle> cycles;
  std::vector<BranchVertex> vertices;
  std::vector<Component> components;
};

struct BanyanStructure {
  struct InteriorVertex {
    int critical_point = -1;
    int multiplicity = 0;
    int valence = 0;  ///< leaves of its tree when alone in it, else 2(m+1)
  };
  struct Component {
    std::vector<int> roots;
    std::vector<int> infinity_labels;
    std::vector<InteriorVertex> vertices;
  };
  double argument = 0.0;
  std::vector<Component> components;
};

/// Descent results per critical point; nullopt where the descent stalled.
using DescentData = std::vector<std::optional<std::vector<int>>>;

DescentData compute_descents(const LiftContext& ctx);

/// Throws WindingInconsistent when a root is enclosed by zero or several components.
Partition partition_from_level(const LevelTrace& trace);

/// Traces every regular height (bottom to top).
std::vector<LevelTrace> trace_regular_levels(const LiftContext& ctx);

/// Throws ChainNotMonotone.
PartitionChain partition_chain(const std::vector<LevelTrace>& traces);
PartitionChain partition_chain(const LiftContext& ctx);

/// Union-find over roots driven by descents, snapshotted per critical height.
/// Throws DescentStalled when any descent stalled.
PartitionChain merge_chain_oracle(const LiftContext& ctx, const DescentData& descents);
PartitionChain merge_chain_oracle(const LiftContext& ctx);

/// One direction trace per sector, at the sector representatives.
std::vector<DirectionTrace> trace_sector_directions(const LiftContext& ctx);

CyclicOrder cyclic_order_from_direction(const DirectionTrace& trace, int sector = 0);

/// True iff no two blocks interleave around `order`. Throws LabelMismatch.
bool is_noncrossing(const Partition& partition, const std::vector<int>& order);
bool is_noncrossing(const Partition& partition, const CyclicOrder& order);

/// Roots read counterclockwise from infinity edge `copy` of a sector.
std::vector<int> linear_order(const DirectionTrace& trace, int copy);

/// sigma with next[i] = prev[sigma(i)]. Throws LabelMismatch.
Permutation sector_permutation(const std::vector<int>& prev, const std::vector<int>& next);

/// Throws ProductNotDCycle.
Factorization factorization(const LiftContext& ctx, const std::vector<DirectionTrace>& sector_traces);

/// Throws CompatibilityViolation.
RealNoncrossingPartition real_noncrossing_partition(const LiftContext& ctx, const Factorization& f);

/// Angular position on the circle at infinity of label m over argument u.
double infinity_label_angle(const Polynomial& p, double u, int label);

CactusStructure cactus_structure(const LiftContext& ctx, int height_index, const LevelTrace& below,
                                 const DescentData& descents);

BanyanStructure banyan_structure(const LiftContext& ctx, int argument_index, const Factorization& f,
                                 const RealNoncrossingPartition& rncp, const DescentData& descents);
/// Banyan of a regular direction set: d trivial components.
BanyanStructure banyan_structure(const DirectionTrace& regular);

}  // namespace brannulus
