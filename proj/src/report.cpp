#include "brannulus/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace brannulus {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw std::invalid_argument("expected a number or an [re, im] pair");
}

json permutation_json(const Permutation& p) { return {{"images", p}, {"cycles", cycle_string(p)}}; }

json partition_json(const Partition& p) { return p.blocks; }

void dump_into(std::string& out, const json& j, int indent) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        dump_into(out, value, indent + 2);
      }
      out += "\n" + std::string(indent, ' ') + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        dump_into(out, j[i], indent + 2);
      }
      out += "\n" + std::string(indent, ' ') + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name}, {"status", std::string(to_string(c.status))}, {"detail", c.detail}});
  }
  return out;
}

json report_json(const Analysis& a) {
  const auto& ctx = a.ctx;
  json r;
  r["schema_version"] = kSchemaVersion;

  json coeffs = json::array();
  for (Complex c : ctx.p.coefficients()) coeffs.push_back(complex_json(c));
  r["polynomial"] = {{"degree", ctx.p.degree()}, {"coefficients", coeffs}};

  json roots = json::array();
  for (size_t j = 0; j < ctx.roots.size(); ++j) roots.push_back({{"id", j}, {"value", complex_json(ctx.roots[j])}});
  r["roots"] = roots;

  json points = json::array();
  for (size_t b = 0; b < ctx.critical.critical_points.entries.size(); ++b) {
    const auto& e = ctx.critical.critical_points.entries[b];
    points.push_back({{"id", b},
                      {"value", complex_json(e.value)},
                      {"multiplicity", e.multiplicity},
                      {"critical_value", ctx.critical.value_of[b]}});
  }
  r["critical_points"] = points;

  json values = json::array();
  for (size_t v = 0; v < ctx.critical.critical_values.entries.size(); ++v) {
    const auto& e = ctx.critical.critical_values.entries[v];
    values.push_back({{"id", v}, {"value", complex_json(e.value)}, {"multiplicity", e.multiplicity}});
  }
  r["critical_values"] = values;

  const auto& cells = ctx.cells;
  r["cells"] = {{"k", cells.k()},
                {"l", cells.l()},
                {"critical_arguments", cells.critical_arguments},
                {"critical_heights", cells.critical_heights},
                {"regular_arguments", cells.regular_arguments},
                {"regular_heights", cells.regular_heights},
                {"counts", {{"vertices", cells.counts.vertices}, {"edges", cells.counts.edges}, {"faces", cells.counts.faces}}}};

  json chain = json::array();
  for (const auto& p : a.chain.partitions) chain.push_back(partition_json(p));
  r["partition_chain"] = chain;
  if (a.merge_chain) {
    json merge = json::array();
    for (const auto& p : a.merge_chain->partitions) merge.push_back(partition_json(p));
    r["merge_chain"] = merge;
  } else {
    r["merge_chain"] = nullptr;
  }

  json orders = json::array();
  for (const auto& o : a.orders) {
    orders.push_back({{"sector", o.sector}, {"argument", cells.regular_arguments[o.sector]}, {"order", o.sequence}});
  }
  r["sector_orders"] = orders;

  const auto& f = a.factorization;
  json perms = json::array();
  for (size_t j = 0; j < f.sector_permutations.size(); ++j) {
    json p = permutation_json(f.sector_permutations[j]);
    p["crossed_argument"] = f.crossed_arguments[j];
    perms.push_back(p);
  }
  r["factorization"] = {{"base_sector", f.base_sector},
                        {"linear_orders", f.linear_orders},
                        {"sector_permutations", perms},
                        {"product", permutation_json(f.product)}};

  json rncp = json::array();
  for (const auto& e : a.rncp.entries) rncp.push_back({{"argument", e.argument}, {"blocks", partition_json(e.partition)}});
  r["real_noncrossing_partition"] = rncp;

  json cacti = json::array();
  for (const auto& c : a.cacti) {
    json cycles = json::array();
    for (const auto& cyc : c.cycles) cycles.push_back({{"covering_degree", cyc.covering_degree}, {"roots", cyc.roots}});
    json vertices = json::array();
    for (const auto& v : c.vertices) {
      vertices.push_back({{"critical_point", v.critical_point},
                          {"multiplicity", v.multiplicity},
                          {"valence", v.valence},
                          {"cycles", v.cycles}});
    }
    json comps = json::array();
    for (const auto& comp : c.components) comps.push_back({{"cycles", comp.cycles}, {"vertices", comp.vertices}});
    cacti.push_back({{"height", c.height}, {"cycles", cycles}, {"vertices", vertices}, {"components", comps}});
  }
  r["cacti"] = cacti;

  json banyans = json::array();
  for (const auto& b : a.banyans) {
    json comps = json::array();
    for (const auto& comp : b.components) {
      json vertices = json::array();
      for (const auto& v : comp.vertices) {
        vertices.push_back(
            {{"critical_point", v.critical_point}, {"multiplicity", v.multiplicity}, {"valence", v.valence}});
      }
      comps.push_back({{"roots", comp.roots}, {"infinity_labels", comp.infinity_labels}, {"vertices", vertices}});
    }
    banyans.push_back({{"argument", b.argument}, {"components", comps}});
  }
  r["banyans"] = banyans;

  const auto& m = a.monodromy;
  json gens = json::array();
  for (size_t v = 0; v < m.generators.size(); ++v) {
    json g = permutation_json(m.generators[v]);
    g["critical_value"] = v;
    gens.push_back(g);
  }
  r["monodromy"] = {{"generators", gens},
                    {"generator_order", m.generator_order},
                    {"product", permutation_json(m.product)},
                    {"product_cycle_type", m.product_cycle_type},
                    {"infinity_loop", permutation_json(a.infinity_loop)}};

  r["checks"] = checks_json(a.checks);
  r["ok"] = a.ok();
  return r;
}

std::string dump_json(const json& j) {
  std::string out;
  dump_into(out, j, 0);
  return out;
}

Polynomial polynomial_from_json(const json& input) {
  if (!input.is_object()) throw std::invalid_argument("input must be a JSON object");
  if (input.contains("coefficients")) {
    const auto& c = input["coefficients"];
    if (!c.is_array()) throw std::invalid_argument("\"coefficients\" must be an array");
    std::vector<Complex> coeffs;
    for (const auto& x : c) coeffs.push_back(complex_from_json(x));
    return Polynomial::from_coefficients(std::move(coeffs));
  }
  if (input.contains("roots")) {
    const auto& roots = input["roots"];
    if (!roots.is_array()) throw std::invalid_argument("\"roots\" must be an array");
    const Complex leading = input.contains("leading") ? complex_from_json(input["leading"]) : Complex{1.0, 0.0};
    std::vector<Complex> rs;
    for (const auto& x : roots) rs.push_back(complex_from_json(x));
    return Polynomial::from_coefficients(coeffs::from_roots(leading, rs));
  }
  throw std::invalid_argument("input needs \"coefficients\" or \"roots\"");
}

}  // namespace brannulus
