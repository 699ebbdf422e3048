#include "ramanujan/groups.hpp"

#include <map>
#include <queue>

#include "ramanujan/errors.hpp"

namespace ramanujan {

FiniteGroup group_from_permutations(const std::vector<std::vector<std::uint32_t>>& generators,
                                    std::string name) {
  if (generators.empty()) throw PreconditionError("no generators");
  const auto points = generators[0].size();
  for (const auto& g : generators) {
    if (g.size() != points) throw PreconditionError("generators act on different point sets");
    std::vector<bool> hit(points, false);
    for (auto x : g) {
      if (x >= points || hit[x]) throw PreconditionError("generator is not a permutation");
      hit[x] = true;
    }
  }
  using Perm = std::vector<std::uint32_t>;
  Perm id(points);
  for (std::uint32_t i = 0; i < points; ++i) id[i] = i;
  // x * s means "apply x, then s".
  auto compose = [&](const Perm& x, const Perm& s) {
    Perm out(points);
    for (std::size_t i = 0; i < points; ++i) out[i] = s[x[i]];
    return out;
  };
  std::map<Perm, std::uint32_t> index{{id, 0}};
  std::vector<Perm> elements{id};
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const auto& s : generators) {
      auto y = compose(elements[i], s);
      if (index.emplace(y, static_cast<std::uint32_t>(elements.size())).second)
        elements.push_back(std::move(y));
    }
  FiniteGroup group;
  group.order = elements.size();
  group.identity = 0;
  group.name = std::move(name);
  for (const auto& s : generators) {
    std::vector<std::uint32_t> rm(group.order);
    for (std::size_t x = 0; x < group.order; ++x) rm[x] = index.at(compose(elements[x], s));
    group.right_mult.push_back(std::move(rm));
  }
  check_generating_set(group);
  return group;
}

void check_generating_set(FiniteGroup& group) {
  const auto k = group.generator_count();
  group.inverse_generator.assign(k, k);
  for (std::size_t s = 0; s < k; ++s) {
    if (group.right_mult[s].size() != group.order)
      throw PreconditionError("generator table has wrong size");
    for (std::size_t t = 0; t < k && group.inverse_generator[s] == k; ++t) {
      bool inverse = true;
      for (std::size_t x = 0; x < group.order && inverse; ++x)
        inverse = group.right_mult[t][group.right_mult[s][x]] == x;
      if (inverse) group.inverse_generator[s] = t;
    }
    if (group.inverse_generator[s] == k)
      throw PreconditionError("generating set is not closed under inversion (generator " +
                              std::to_string(s) + ")");
  }
  std::vector<bool> seen(group.order, false);
  std::queue<std::uint32_t> queue;
  seen[group.identity] = true;
  queue.push(group.identity);
  std::size_t reached = 1;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop();
    for (const auto& rm : group.right_mult)
      if (!seen[rm[x]]) {
        seen[rm[x]] = true;
        ++reached;
        queue.push(rm[x]);
      }
  }
  if (reached != group.order)
    throw PreconditionError("generators do not generate the group: reached " +
                            std::to_string(reached) + " of " + std::to_string(group.order) +
                            " elements");
}

SerreGraph cayley_graph(const FiniteGroup& group) {
  const auto k = group.generator_count();
  std::vector<DirectedEdge> edges(group.order * k);
  for (std::uint32_t x = 0; x < group.order; ++x)
    for (std::size_t s = 0; s < k; ++s) {
      auto y = group.right_mult[s][x];
      edges[x * k + s] = {x, y, static_cast<EdgeId>(y * k + group.inverse_generator[s])};
    }
  return SerreGraph(group.order, std::move(edges), "Cay(" + group.name + ")");
}

SchreierQuotient schreier_quotient(const FiniteGroup& group, std::size_t s) {
  const auto k = group.generator_count();
  if (s >= k) throw PreconditionError("generator index out of range");
  FiniteGroup checked = group;
  check_generating_set(checked);

  // Words from the identity give h * g for h in <s> by replaying g's word on h.
  std::vector<std::vector<std::size_t>> word(group.order);
  std::vector<bool> seen(group.order, false);
  std::queue<std::uint32_t> queue;
  seen[group.identity] = true;
  queue.push(group.identity);
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop();
    for (std::size_t t = 0; t < k; ++t) {
      auto y = group.right_mult[t][x];
      if (!seen[y]) {
        seen[y] = true;
        word[y] = word[x];
        word[y].push_back(t);
        queue.push(y);
      }
    }
  }
  std::vector<std::uint32_t> subgroup{group.identity};
  for (auto x = group.right_mult[s][group.identity]; x != group.identity;
       x = group.right_mult[s][x])
    subgroup.push_back(x);

  constexpr auto kUnset = static_cast<VertexId>(-1);
  SchreierQuotient out;
  out.subgroup_order = subgroup.size();
  out.coset_of.assign(group.order, kUnset);
  std::vector<std::uint32_t> representative;
  for (std::uint32_t g = 0; g < group.order; ++g) {
    if (out.coset_of[g] != kUnset) continue;
    auto c = static_cast<VertexId>(representative.size());
    representative.push_back(g);
    for (auto h : subgroup) {
      auto x = h;
      for (auto t : word[g]) x = group.right_mult[t][x];
      out.coset_of[x] = c;
    }
  }
  out.identity_coset = out.coset_of[group.identity];
  const auto nc = representative.size();
  std::vector<DirectedEdge> edges(nc * k);
  for (std::uint32_t c = 0; c < nc; ++c)
    for (std::size_t t = 0; t < k; ++t) {
      auto target = out.coset_of[group.right_mult[t][representative[c]]];
      edges[c * k + t] = {c, target, static_cast<EdgeId>(target * k + checked.inverse_generator[t])};
    }
  out.quotient = SerreGraph(nc, std::move(edges), "Sch(" + group.name + ")");
  for (auto e : out.quotient.out_edges(out.identity_coset))
    if (out.quotient.is_loop(e)) out.loop_at_identity = true;
  out.covering_verified = verify_covering(cayley_graph(checked), out.quotient, out.coset_of, k);
  return out;
}

bool verify_covering(const SerreGraph& cover, const SerreGraph& base,
                     const std::vector<VertexId>& map, std::size_t generators) {
  if (map.size() != cover.vertex_count()) return false;
  if (cover.edge_count() != cover.vertex_count() * generators ||
      base.edge_count() != base.vertex_count() * generators)
    return false;
  auto edge_map = [&](EdgeId e) {
    return static_cast<EdgeId>(map[e / generators] * generators + e % generators);
  };
  for (EdgeId e = 0; e < cover.edge_count(); ++e) {
    const auto& de = cover.edge(e);
    const auto& be = base.edge(edge_map(e));
    if (be.source != map[de.source] || be.target != map[de.target]) return false;
    if (edge_map(de.inverse) != be.inverse) return false;
  }
  // Local bijectivity: out-edges of x map one-to-one onto out-edges of map[x].
  for (VertexId x = 0; x < cover.vertex_count(); ++x) {
    std::vector<bool> hit(generators, false);
    for (auto e : cover.out_edges(x)) {
      auto f = edge_map(e);
      if (base.edge(f).source != map[x] || hit[f % generators]) return false;
      hit[f % generators] = true;
    }
    if (cover.degree(x) != base.degree(map[x])) return false;
  }
  return true;
}

}  // namespace ramanujan
