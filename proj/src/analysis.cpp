#include "brannulus/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "brannulus/error.hpp"

namespace brannulus {

namespace {

void add(Analysis& a, std::string name, bool pass, std::string detail = "") {
  a.checks.push_back({std::move(name), pass ? Check::Status::Pass : Check::Status::Fail, std::move(detail)});
}

void skip(Analysis& a, std::string name, std::string detail) {
  a.checks.push_back({std::move(name), Check::Status::Skipped, std::move(detail)});
}

std::string partition_string(const Partition& p) {
  std::string s = "{";
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    s += i ? ",{" : "{";
    for (size_t j = 0; j < p.blocks[i].size(); ++j) s += (j ? "," : "") + std::to_string(p.blocks[i][j]);
    s += "}";
  }
  return s + "}";
}

int value_argument_index(const LiftContext& ctx, int value_id) {
  return ctx.cells.argument_index(to_annulus(ctx.critical.critical_values.entries[value_id].value).argument);
}

int value_height_index(const LiftContext& ctx, int value_id) {
  return ctx.cells.height_index(to_annulus(ctx.critical.critical_values.entries[value_id].value).height);
}

bool descents_available(const Analysis& a, auto&& selects) {
  for (size_t b = 0; b < a.descents.size(); ++b) {
    if (selects(static_cast<int>(b)) && !a.descents[b]) return false;
  }
  return true;
}

void check_counts(Analysis& a) {
  const auto& ctx = a.ctx;
  const int d = ctx.p.degree();
  int total = 0;
  for (const auto& e : ctx.critical.critical_points.entries) total += e.multiplicity;
  add(a, "critical_multiplicity_sum", total == d - 1,
      "sum " + std::to_string(total) + ", expected " + std::to_string(d - 1));

  const auto expected = annulus_cell_counts(ctx.cells.k(), ctx.cells.l());
  const auto& c = ctx.cells.counts;
  add(a, "annulus_cell_counts", c.vertices == expected.vertices && c.edges == expected.edges && c.faces == expected.faces,
      "(" + std::to_string(c.vertices) + "," + std::to_string(c.edges) + "," + std::to_string(c.faces) + ")");

  const long chi = branched_euler_characteristic(d, ctx.cells, ctx.critical.critical_points);
  add(a, "branched_euler_characteristic", chi == 1 - d,
      "V-E+F = " + std::to_string(chi) + ", expected " + std::to_string(1 - d));
}

void check_levels(Analysis& a) {
  bool ok = true;
  std::string detail;
  for (const auto& level : a.levels) {
    for (size_t c = 0; c < level.components.size(); ++c) {
      int enclosed = 0;
      for (int w : level.winding_table[c]) enclosed += w == 1;
      if (enclosed != static_cast<int>(level.components[c].cycle.size())) {
        ok = false;
        detail = "component of length " + std::to_string(level.components[c].cycle.size()) + " encloses " +
                 std::to_string(enclosed) + " roots";
      }
    }
  }
  add(a, "covering_degree", ok, detail);

  std::string chain;
  for (const auto& p : a.chain.partitions) chain += (chain.empty() ? "" : " < ") + partition_string(p);
  add(a, "chain_monotone", true, chain);

  if (a.merge_chain) {
    add(a, "chain_merge_oracle", a.merge_chain->partitions == a.chain.partitions);
  } else {
    skip(a, "chain_merge_oracle", "a descent stalled; level-trace chain verified on its own");
  }

  bool noncrossing = true;
  for (const auto& p : a.chain.partitions) {
    for (const auto& o : a.orders) noncrossing = noncrossing && is_noncrossing(p, o);
  }
  add(a, "chain_noncrossing", noncrossing);
}

void check_factorization(Analysis& a) {
  const auto& ctx = a.ctx;
  const auto& f = a.factorization;
  add(a, "factorization_product", f.product == long_cycle(ctx.p.degree()), cycle_string(f.product));

  bool ok = true;
  for (size_t j = 0; j < f.sector_permutations.size(); ++j) {
    int moved = 0;
    for (const auto& orbit : cycles(f.sector_permutations[j])) moved += static_cast<int>(orbit.size()) - 1;
    const int arg = ctx.cells.argument_index(f.crossed_arguments[j]);
    int mult = 0;
    for (size_t b = 0; b < ctx.critical.value_of.size(); ++b) {
      if (value_argument_index(ctx, ctx.critical.value_of[b]) == arg) {
        mult += ctx.critical.critical_points.entries[b].multiplicity;
      }
    }
    ok = ok && moved == mult;
  }
  add(a, "sector_permutation_multiplicity", ok);

  bool blocks_ok = static_cast<int>(a.rncp.entries.size()) == ctx.cells.k();
  std::string detail;
  for (const auto& e : a.rncp.entries) {
    const int arg = ctx.cells.argument_index(e.argument);
    int points = 0;
    for (size_t b = 0; b < ctx.critical.value_of.size(); ++b) {
      points += value_argument_index(ctx, ctx.critical.value_of[b]) == arg;
    }
    const int blocks = static_cast<int>(e.partition.nontrivial_blocks().size());
    blocks_ok = blocks_ok && blocks >= 1 && blocks <= points;
    if (blocks != points) detail = "fewer blocks than critical points at an argument (joined banyan vertices)";
  }
  add(a, "rncp_blocks", blocks_ok, detail);
}

void check_structures(Analysis& a) {
  const auto& ctx = a.ctx;
  const int d = ctx.p.degree();
  bool cactus_ok = true;
  int skipped = 0;
  for (int h = 0; h < ctx.cells.l(); ++h) {
    if (!descents_available(a, [&](int b) { return value_height_index(ctx, ctx.critical.value_of[b]) == h; })) {
      ++skipped;
      continue;
    }
    auto cactus = cactus_structure(ctx, h, a.levels[h], a.descents);
    int degree = 0;
    for (const auto& c : cactus.cycles) degree += c.covering_degree;
    cactus_ok = cactus_ok && degree == d;
    for (const auto& v : cactus.vertices) {
      cactus_ok = cactus_ok && static_cast<int>(v.cycles.size()) == v.multiplicity + 1;
    }
    a.cacti.push_back(std::move(cactus));
  }
  if (skipped == ctx.cells.l()) {
    skip(a, "cactus_structure", "every critical height has a stalled descent");
  } else {
    add(a, "cactus_structure", cactus_ok, skipped ? std::to_string(skipped) + " heights skipped" : "");
  }

  bool banyan_ok = true;
  skipped = 0;
  for (int u = 0; u < ctx.cells.k(); ++u) {
    if (!descents_available(a, [&](int b) { return value_argument_index(ctx, ctx.critical.value_of[b]) == u; })) {
      ++skipped;
      continue;
    }
    auto banyan = banyan_structure(ctx, u, a.factorization, a.rncp, a.descents);
    int leaves = 0;
    for (const auto& c : banyan.components) {
      leaves += static_cast<int>(c.roots.size());
      if (c.roots.size() != c.infinity_labels.size()) banyan_ok = false;
      if ((c.roots.size() > 1) != !c.vertices.empty()) banyan_ok = false;
    }
    banyan_ok = banyan_ok && leaves == d;
    a.banyans.push_back(std::move(banyan));
  }
  if (skipped == ctx.cells.k()) {
    skip(a, "banyan_structure", "every critical argument has a stalled descent");
  } else {
    add(a, "banyan_structure", banyan_ok, skipped ? std::to_string(skipped) + " arguments skipped" : "");
  }

  // A critical vertex of multiplicity m meets 2(m+1) level edges and 2(m+1) direction edges.
  bool valence_ok = true;
  std::string valences;
  for (const auto& cactus : a.cacti) {
    for (const auto& v : cactus.vertices) {
      int direction = -1;
      for (const auto& banyan : a.banyans) {
        for (const auto& comp : banyan.components) {
          for (const auto& iv : comp.vertices) {
            if (iv.critical_point == v.critical_point) direction = iv.valence;
          }
        }
      }
      if (direction < 0) continue;
      const int total = v.valence + direction;
      valence_ok = valence_ok && total == 4 * (v.multiplicity + 1);
      valences += (valences.empty() ? "" : ",") + std::to_string(total);
    }
  }
  add(a, "critical_vertex_valence", valence_ok, valences);
}

void check_monodromy(Analysis& a) {
  const int d = a.ctx.p.degree();
  add(a, "monodromy_orbit_sizes", a.monodromy.orbit_sizes_ok);
  add(a, "monodromy_transitive", a.monodromy.transitive);
  add(a, "monodromy_product_cycle_type", a.monodromy.product_cycle_type == std::vector<int>{d},
      cycle_string(a.monodromy.product));
  add(a, "monodromy_infinity_loop", cycle_type(a.infinity_loop) == std::vector<int>{d}, cycle_string(a.infinity_loop));
}

Analysis run(const Polynomial& p, const AnalysisOptions& opt) {
  Analysis a{make_lift_context(p, opt.policy, opt.distinctness)};
  a.levels = trace_regular_levels(a.ctx);
  a.chain = partition_chain(a.levels);
  a.descents = compute_descents(a.ctx);
  if (std::all_of(a.descents.begin(), a.descents.end(), [](const auto& x) { return x.has_value(); })) {
    a.merge_chain = merge_chain_oracle(a.ctx, a.descents);
  }
  a.sectors = trace_sector_directions(a.ctx);
  for (size_t s = 0; s < a.sectors.size(); ++s) {
    a.orders.push_back(cyclic_order_from_direction(a.sectors[s], static_cast<int>(s)));
  }
  a.factorization = factorization(a.ctx, a.sectors);
  a.rncp = real_noncrossing_partition(a.ctx, a.factorization);
  a.monodromy = monodromy_representation(a.ctx);
  a.infinity_loop = infinity_loop_permutation(a.ctx);

  check_counts(a);
  check_levels(a);
  check_factorization(a);
  check_structures(a);
  check_monodromy(a);
  return a;
}

}  // namespace

std::string_view to_string(Check::Status s) {
  switch (s) {
    case Check::Status::Pass: return "pass";
    case Check::Status::Fail: return "fail";
    case Check::Status::Skipped: return "skipped";
  }
  return "unknown";
}

bool Analysis::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Check::Status::Fail; });
}

CombinatorialOutputs Analysis::combinatorics() const {
  CombinatorialOutputs out;
  out.chain = chain.partitions;
  for (const auto& o : orders) out.sector_orders.push_back(o.sequence);
  out.sector_permutations = factorization.sector_permutations;
  for (const auto& e : rncp.entries) out.rncp.push_back(e.partition);
  out.generators = monodromy.generators;
  out.infinity_loop = infinity_loop;
  return out;
}

long branched_euler_characteristic(int degree, const AnnulusComplex& cells, const ComplexMultiset& critical_points) {
  const auto counts = annulus_cell_counts(cells.k(), cells.l());
  long total = 0;
  for (const auto& e : critical_points.entries) total += e.multiplicity;
  const long v = degree * counts.vertices - total;
  return v - degree * counts.edges + degree * counts.faces;
}

Analysis analyze(const Polynomial& p, const AnalysisOptions& opt) {
  Analysis a = run(p, opt);
  if (opt.deep) {
    AnalysisOptions half = opt;
    half.deep = false;
    half.policy.step_scale *= 0.5;
    const Analysis b = run(p, half);
    add(a, "step_halving", a.combinatorics() == b.combinatorics());
  }
  return a;
}

}  // namespace brannulus
