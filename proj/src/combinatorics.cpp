#include "brannulus/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "brannulus/error.hpp"

namespace brannulus {

namespace {

// Cyclic interleaving test for two disjoint point sets given by their
// positions on a circle: they cross iff membership alternates more than twice.
bool interleave(std::vector<std::pair<double, int>> marks) {
  std::sort(marks.begin(), marks.end());
  int changes = 0;
  for (size_t i = 0; i < marks.size(); ++i) {
    if (marks[i].second != marks[(i + 1) % marks.size()].second) ++changes;
  }
  return changes > 2;
}

int value_height_index(const LiftContext& ctx, int value_id) {
  const Complex v = ctx.critical.critical_values.entries[value_id].value;
  return ctx.cells.height_index(to_annulus(v).height);
}

int value_argument_index(const LiftContext& ctx, int value_id) {
  const Complex v = ctx.critical.critical_values.entries[value_id].value;
  return ctx.cells.argument_index(to_annulus(v).argument);
}

// Infinity labels, at the crossed critical argument, of the positions of L_{j-1}.
std::vector<int> crossing_labels(const LiftContext& ctx, const Factorization& f, int j) {
  const int k = ctx.cells.k();
  const int d = ctx.p.degree();
  const int edge = j - 1;
  const int sector = (f.base_sector + edge) % k;
  const int copy = (f.base_sector + edge) / k;
  const double upper =
      sector + 1 < k ? ctx.cells.critical_arguments[sector + 1] : ctx.cells.critical_arguments[0] + kTwoPi;
  const double crossed = normalize_angle(upper);
  const double lead_arg = std::arg(ctx.p.leading());
  std::vector<int> labels(d);
  for (int i = 0; i < d; ++i) {
    const int index = (copy + i) % d;
    const double theta = (upper - lead_arg + kTwoPi * index) / d;
    const double turns = (d * theta + lead_arg - crossed) / kTwoPi;
    labels[i] = static_cast<int>(((std::llround(turns) % d) + d) % d);
  }
  return labels;
}

int find_crossing(const LiftContext& ctx, const Factorization& f, int argument_index) {
  const double u = ctx.cells.critical_arguments.at(argument_index);
  for (size_t j = 0; j < f.crossed_arguments.size(); ++j) {
    if (circular_distance(f.crossed_arguments[j], u) <= 1e-9) return static_cast<int>(j) + 1;
  }
  throw Error(ErrorCode::LabelMismatch, "no sector permutation crosses this argument");
}

}  // namespace

Partition Partition::discrete(int n) {
  Partition p;
  for (int i = 0; i < n; ++i) p.blocks.push_back({i});
  return p;
}

Partition Partition::trivial(int n) {
  Partition p;
  p.blocks.emplace_back(n);
  std::iota(p.blocks[0].begin(), p.blocks[0].end(), 0);
  return p;
}

Partition Partition::from_blocks(std::vector<std::vector<int>> blocks) {
  Partition p;
  for (auto& b : blocks) {
    if (b.empty()) continue;
    std::sort(b.begin(), b.end());
    p.blocks.push_back(std::move(b));
  }
  std::sort(p.blocks.begin(), p.blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

int Partition::size() const {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  return n;
}

bool Partition::is_discrete() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() == 1; });
}

bool Partition::is_trivial() const { return blocks.size() == 1; }

std::vector<std::vector<int>> Partition::nontrivial_blocks() const {
  std::vector<std::vector<int>> out;
  for (const auto& b : blocks) {
    if (b.size() > 1) out.push_back(b);
  }
  return out;
}

bool refines(const Partition& a, const Partition& b) {
  std::vector<int> owner(b.size(), -1);
  for (size_t i = 0; i < b.blocks.size(); ++i) {
    for (int x : b.blocks[i]) owner.at(x) = static_cast<int>(i);
  }
  for (const auto& block : a.blocks) {
    for (int x : block) {
      if (owner.at(x) != owner.at(block.front())) return false;
    }
  }
  return true;
}

DisjointSets::DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

int DisjointSets::find(int x) {
  while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
  return x;
}

void DisjointSets::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a != b) parent_[std::max(a, b)] = std::min(a, b);
}

Partition DisjointSets::partition() {
  const int n = static_cast<int>(parent_.size());
  std::vector<std::vector<int>> blocks(n);
  for (int i = 0; i < n; ++i) blocks[find(i)].push_back(i);
  return Partition::from_blocks(std::move(blocks));
}

DescentData compute_descents(const LiftContext& ctx) {
  DescentData out;
  for (size_t i = 0; i < ctx.critical.critical_points.entries.size(); ++i) {
    try {
      out.emplace_back(descend_from_critical_point(ctx, static_cast<int>(i)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DescentStalled) throw;
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

Partition partition_from_level(const LevelTrace& trace) {
  const size_t roots = trace.winding_table.empty() ? 0 : trace.winding_table.front().size();
  std::vector<std::vector<int>> blocks(trace.components.size());
  for (size_t j = 0; j < roots; ++j) {
    int owner = -1;
    for (size_t c = 0; c < trace.winding_table.size(); ++c) {
      const int w = trace.winding_table[c][j];
      if (w == 1 && owner < 0) {
        owner = static_cast<int>(c);
      } else if (w != 0) {
        throw Error(ErrorCode::WindingInconsistent, "root enclosed by more than one level component");
      }
    }
    if (owner < 0) throw Error(ErrorCode::WindingInconsistent, "root not enclosed by any level component");
    blocks[owner].push_back(static_cast<int>(j));
  }
  for (const auto& b : blocks) {
    if (b.empty()) throw Error(ErrorCode::WindingInconsistent, "level component encloses no root");
  }
  return Partition::from_blocks(std::move(blocks));
}

std::vector<LevelTrace> trace_regular_levels(const LiftContext& ctx) {
  std::vector<LevelTrace> out;
  for (double t : ctx.cells.regular_heights) out.push_back(trace_level_set(ctx, t));
  return out;
}

PartitionChain partition_chain(const std::vector<LevelTrace>& traces) {
  PartitionChain chain;
  for (const auto& t : traces) chain.partitions.push_back(partition_from_level(t));
  const auto& ps = chain.partitions;
  if (ps.empty() || !ps.front().is_discrete() || !ps.back().is_trivial()) {
    throw Error(ErrorCode::ChainNotMonotone, "chain must run from discrete to trivial");
  }
  for (size_t i = 1; i < ps.size(); ++i) {
    if (!refines(ps[i - 1], ps[i]) || ps[i - 1] == ps[i]) {
      throw Error(ErrorCode::ChainNotMonotone, "partition chain is not strictly increasing");
    }
  }
  return chain;
}

PartitionChain partition_chain(const LiftContext& ctx) { return partition_chain(trace_regular_levels(ctx)); }

PartitionChain merge_chain_oracle(const LiftContext& ctx, const DescentData& descents) {
  for (const auto& d : descents) {
    if (!d) throw Error(ErrorCode::DescentStalled, "merge oracle needs every descent");
  }
  const int d = ctx.p.degree();
  DisjointSets sets(d);
  PartitionChain chain;
  chain.partitions.push_back(sets.partition());
  for (int h = 0; h < ctx.cells.l(); ++h) {
    for (size_t i = 0; i < descents.size(); ++i) {
      if (value_height_index(ctx, ctx.critical.value_of[i]) != h) continue;
      const auto& roots = *descents[i];
      for (size_t r = 1; r < roots.size(); ++r) sets.unite(roots[0], roots[r]);
    }
    chain.partitions.push_back(sets.partition());
  }
  return chain;
}

PartitionChain merge_chain_oracle(const LiftContext& ctx) { return merge_chain_oracle(ctx, compute_descents(ctx)); }

std::vector<DirectionTrace> trace_sector_directions(const LiftContext& ctx) {
  std::vector<DirectionTrace> out;
  for (double u : ctx.cells.regular_arguments) out.push_back(trace_direction_set(ctx, u));
  return out;
}

std::vector<int> linear_order(const DirectionTrace& trace, int copy) {
  const int d = static_cast<int>(trace.strands.size());
  std::vector<int> by_index(d, -1);
  for (int s = 0; s < d; ++s) by_index[trace.infinity_index_of[s]] = trace.root_of[s];
  std::vector<int> out(d);
  for (int i = 0; i < d; ++i) out[i] = by_index[((copy + i) % d + d) % d];
  return out;
}

CyclicOrder cyclic_order_from_direction(const DirectionTrace& trace, int sector) {
  CyclicOrder order;
  order.sector = sector;
  order.sequence = linear_order(trace, 0);
  const auto smallest = std::min_element(order.sequence.begin(), order.sequence.end());
  std::rotate(order.sequence.begin(), smallest, order.sequence.end());
  return order;
}

bool is_noncrossing(const Partition& partition, const std::vector<int>& order) {
  std::vector<int> labels;
  for (const auto& b : partition.blocks) labels.insert(labels.end(), b.begin(), b.end());
  std::vector<int> sorted_order = order;
  std::sort(labels.begin(), labels.end());
  std::sort(sorted_order.begin(), sorted_order.end());
  if (labels != sorted_order) throw Error(ErrorCode::LabelMismatch, "partition labels differ from the order");

  std::vector<int> pos(order.size());
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  const auto blocks = partition.nontrivial_blocks();
  for (size_t a = 0; a < blocks.size(); ++a) {
    for (size_t b = a + 1; b < blocks.size(); ++b) {
      std::vector<std::pair<double, int>> marks;
      for (int x : blocks[a]) marks.emplace_back(pos[x], 0);
      for (int x : blocks[b]) marks.emplace_back(pos[x], 1);
      if (interleave(std::move(marks))) return false;
    }
  }
  return true;
}

bool is_noncrossing(const Partition& partition, const CyclicOrder& order) {
  return is_noncrossing(partition, order.sequence);
}

Permutation sector_permutation(const std::vector<int>& prev, const std::vector<int>& next) {
  if (prev.size() != next.size()) throw Error(ErrorCode::LabelMismatch, "orders have different lengths");
  std::vector<int> where(prev.size(), -1);
  for (size_t i = 0; i < prev.size(); ++i) {
    if (prev[i] < 0 || prev[i] >= static_cast<int>(prev.size()) || where[prev[i]] >= 0) {
      throw Error(ErrorCode::LabelMismatch, "order is not a sequence of distinct labels");
    }
    where[prev[i]] = static_cast<int>(i);
  }
  Permutation sigma(next.size());
  for (size_t i = 0; i < next.size(); ++i) {
    if (next[i] < 0 || next[i] >= static_cast<int>(where.size()) || where[next[i]] < 0) {
      throw Error(ErrorCode::LabelMismatch, "orders use different labels");
    }
    sigma[i] = where[next[i]];
  }
  if (!is_permutation(sigma)) throw Error(ErrorCode::LabelMismatch, "orders use different labels");
  return sigma;
}

Factorization factorization(const LiftContext& ctx, const std::vector<DirectionTrace>& sector_traces) {
  const int k = ctx.cells.k();
  const int d = ctx.p.degree();
  if (static_cast<int>(sector_traces.size()) != k) {
    throw Error(ErrorCode::MissingTraces, "one direction trace per sector required");
  }
  Factorization f;
  double best = kTwoPi + 1.0;
  for (int s = 0; s < k; ++s) {
    const double mid = normalize_angle(ctx.cells.regular_arguments[s]);
    if (mid < best) {
      best = mid;
      f.base_sector = s;
    }
  }
  for (int j = 0; j <= k; ++j) {
    const int sector = (f.base_sector + j) % k;
    const int copy = (f.base_sector + j) / k;
    f.linear_orders.push_back(linear_order(sector_traces[sector], copy));
  }
  f.product = identity_permutation(d);
  for (int j = 1; j <= k; ++j) {
    f.sector_permutations.push_back(sector_permutation(f.linear_orders[j - 1], f.linear_orders[j]));
    const int sector = (f.base_sector + j - 1) % k;
    f.crossed_arguments.push_back(ctx.cells.critical_arguments[(sector + 1) % k]);
    f.product = compose(f.product, f.sector_permutations.back());
  }
  if (f.product != long_cycle(d)) {
    throw Error(ErrorCode::ProductNotDCycle, "sector permutations do not multiply to the long cycle");
  }
  return f;
}

double infinity_label_angle(const Polynomial& p, double u, int label) {
  return normalize_angle((u - std::arg(p.leading()) + kTwoPi * label) / p.degree());
}

RealNoncrossingPartition real_noncrossing_partition(const LiftContext& ctx, const Factorization& f) {
  const int d = ctx.p.degree();
  RealNoncrossingPartition out;
  for (size_t j = 1; j <= f.sector_permutations.size(); ++j) {
    const auto labels = crossing_labels(ctx, f, static_cast<int>(j));
    std::vector<std::vector<int>> blocks;
    for (const auto& orbit : cycles(f.sector_permutations[j - 1], true)) {
      std::vector<int> block;
      for (int pos : orbit) block.push_back(labels[pos]);
      blocks.push_back(std::move(block));
    }
    RealNoncrossingPartition::Entry entry{f.crossed_arguments[j - 1], Partition::from_blocks(std::move(blocks))};
    std::vector<int> natural(d);
    std::iota(natural.begin(), natural.end(), 0);
    if (!is_noncrossing(entry.partition, natural)) {
      throw Error(ErrorCode::CompatibilityViolation, "entry is not a noncrossing partition");
    }
    out.entries.push_back(std::move(entry));
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) { return a.argument < b.argument; });

  // Global compatibility: all nontrivial blocks drawn on one circle stay disjoint.
  std::vector<std::vector<double>> hulls;
  for (const auto& e : out.entries) {
    for (const auto& b : e.partition.nontrivial_blocks()) {
      std::vector<double> angles;
      for (int label : b) angles.push_back(infinity_label_angle(ctx.p, e.argument, label));
      hulls.push_back(std::move(angles));
    }
  }
  for (size_t a = 0; a < hulls.size(); ++a) {
    for (size_t b = a + 1; b < hulls.size(); ++b) {
      std::vector<std::pair<double, int>> marks;
      for (double x : hulls[a]) marks.emplace_back(x, 0);
      for (double x : hulls[b]) marks.emplace_back(x, 1);
      if (interleave(std::move(marks))) {
        throw Error(ErrorCode::CompatibilityViolation, "blocks at different arguments cross");
      }
    }
  }
  return out;
}

CactusStructure cactus_structure(const LiftContext& ctx, int height_index, const LevelTrace& below,
                                 const DescentData& descents) {
  CactusStructure out;
  out.height = ctx.cells.critical_heights.at(height_index);
  std::vector<int> cycle_of_root(ctx.roots.size(), -1);
  for (size_t c = 0; c < below.components.size(); ++c) {
    CactusStructure::Cycle cyc;
    cyc.covering_degree = static_cast<int>(below.components[c].cycle.size());
    for (size_t j = 0; j < ctx.roots.size(); ++j) {
      if (below.winding_table[c][j] == 1) {
        cyc.roots.push_back(static_cast<int>(j));
        cycle_of_root[j] = static_cast<int>(c);
      }
    }
    out.cycles.push_back(std::move(cyc));
  }

  DisjointSets glue(static_cast<int>(out.cycles.size()));
  for (size_t i = 0; i < descents.size(); ++i) {
    if (value_height_index(ctx, ctx.critical.value_of[i]) != height_index) continue;
    if (!descents[i]) throw Error(ErrorCode::DescentStalled, "cactus needs the descent of every branch vertex");
    CactusStructure::BranchVertex v;
    v.critical_point = static_cast<int>(i);
    v.multiplicity = ctx.critical.critical_points.entries[i].multiplicity;
    for (int r : *descents[i]) v.cycles.push_back(cycle_of_root.at(r));
    std::sort(v.cycles.begin(), v.cycles.end());
    v.cycles.erase(std::unique(v.cycles.begin(), v.cycles.end()), v.cycles.end());
    // Each cycle through the vertex contributes an incoming and an outgoing edge.
    v.valence = 2 * static_cast<int>(v.cycles.size());
    for (int c : v.cycles) glue.unite(v.cycles.front(), c);
    out.vertices.push_back(std::move(v));
  }

  const auto groups = glue.partition();
  for (const auto& block : groups.blocks) {
    CactusStructure::Component comp;
    comp.cycles = block;
    for (size_t v = 0; v < out.vertices.size(); ++v) {
      if (std::binary_search(block.begin(), block.end(), out.vertices[v].cycles.front())) {
        comp.vertices.push_back(static_cast<int>(v));
      }
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

BanyanStructure banyan_structure(const LiftContext& ctx, int argument_index, const Factorization& f,
                                 const RealNoncrossingPartition& rncp, const DescentData& descents) {
  (void)rncp;
  const int j = find_crossing(ctx, f, argument_index);
  const auto labels = crossing_labels(ctx, f, j);
  const auto& prev = f.linear_orders[j - 1];

  BanyanStructure out;
  out.argument = ctx.cells.critical_arguments[argument_index];
  for (const auto& orbit : cycles(f.sector_permutations[j - 1], true)) {
    BanyanStructure::Component comp;
    for (int pos : orbit) {
      comp.roots.push_back(prev[pos]);
      comp.infinity_labels.push_back(labels[pos]);
    }
    std::sort(comp.roots.begin(), comp.roots.end());
    std::sort(comp.infinity_labels.begin(), comp.infinity_labels.end());
    out.components.push_back(std::move(comp));
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const auto& a, const auto& b) { return a.infinity_labels.front() < b.infinity_labels.front(); });

  for (size_t i = 0; i < descents.size(); ++i) {
    if (value_argument_index(ctx, ctx.critical.value_of[i]) != argument_index) continue;
    if (!descents[i]) throw Error(ErrorCode::DescentStalled, "banyan needs the descent of every interior vertex");
    const int m = ctx.critical.critical_points.entries[i].multiplicity;
    bool placed = false;
    for (auto& comp : out.components) {
      const bool contains = std::all_of(descents[i]->begin(), descents[i]->end(), [&](int r) {
        return std::find(comp.roots.begin(), comp.roots.end(), r) != comp.roots.end();
      });
      if (contains) {
        comp.vertices.push_back({static_cast<int>(i), m, 2 * (m + 1)});
        placed = true;
        break;
      }
    }
    if (!placed) throw Error(ErrorCode::LabelMismatch, "descent roots do not lie in one banyan component");
  }
  // A lone interior vertex is adjacent to every leaf of its tree.
  for (auto& comp : out.components) {
    if (comp.vertices.size() == 1) {
      comp.vertices[0].valence = static_cast<int>(comp.roots.size() + comp.infinity_labels.size());
    }
  }
  return out;
}

BanyanStructure banyan_structure(const DirectionTrace& regular) {
  BanyanStructure out;
  out.argument = normalize_angle(regular.argument);
  for (size_t s = 0; s < regular.strands.size(); ++s) {
    out.components.push_back({{regular.root_of[s]}, {regular.infinity_index_of[s]}, {}});
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const auto& a, const auto& b) { return a.infinity_labels.front() < b.infinity_labels.front(); });
  return out;
}

}  // namespace brannulus
