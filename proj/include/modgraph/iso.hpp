#pragma once

#include <functional>
#include <optional>

#include "modgraph/graph.hpp"

namespace modgraph {

/// An isomorphism of graphs: an arc bijection commuting with the
/// involutions and preserving darts, incidence and boundary, together
/// with the induced vertex bijection.
struct GraphIso {
  IdMap<Id> arc_map;
  IdMap<Id> vertex_map;

  bool operator==(const GraphIso& o) const {
    return arc_map == o.arc_map && vertex_map == o.vertex_map;
  }
  bool operator<(const GraphIso& o) const {
    return std::tie(arc_map, vertex_map) < std::tie(o.arc_map, o.vertex_map);
  }
};

struct IsoOptions {
  const IdMap<Id>* src_colors = nullptr;  // involutive colorings to preserve
  const IdMap<Id>* dst_colors = nullptr;
  IdMap<Id> forced_arcs;  // required images, e.g. boundary identifications
  std::function<bool(const Id&, const Id&)> vertex_ok;  // extra vertex filter
  std::function<bool(const GraphIso&)> accept;          // final filter
  std::size_t limit = static_cast<std::size_t>(-1);
};

namespace detail {

class IsoSearch {
 public:
  IsoSearch(const Graph& g, const Graph& h, const IsoOptions& opts)
      : g_(g), h_(h), opts_(opts) {}

  std::vector<GraphIso> run() {
    if (!invariants_match()) return {};
    split_components();
    step(0);
    return std::move(found_);
  }

 private:
  struct Component {
    std::vector<Id> vertices;           // BFS handled dynamically; sorted seeds
    std::optional<std::pair<Id, Id>> free_orbit;  // vertexless pair
  };

  bool invariants_match() const {
    if (g_.arcs.size() != h_.arcs.size()) return false;
    if (g_.vertices.size() != h_.vertices.size()) return false;
    if (g_.darts.size() != h_.darts.size()) return false;
    if (g_.boundary.size() != h_.boundary.size()) return false;
    std::multiset<std::size_t> dg, dh;
    for (const auto& v : g_.vertices) dg.insert(g_.valence(v));
    for (const auto& v : h_.vertices) dh.insert(h_.valence(v));
    return dg == dh;
  }

  void split_components() {
    UnionFind uf;
    for (const auto& a : g_.arcs.elements()) uf.add("a/" + a);
    for (const auto& v : g_.vertices) uf.add("v/" + v);
    for (const auto& [x, y] : g_.arcs.orbits()) uf.unite("a/" + x, "a/" + y);
    for (const auto& [d, v] : g_.incidence) uf.unite("a/" + d, "v/" + v);
    std::map<Id, Component> comps;
    for (const auto& v : g_.vertices)
      comps[uf.find("v/" + v)].vertices.push_back(v);
    for (const auto& [x, y] : g_.arcs.orbits()) {
      const Id root = uf.find("a/" + x);
      if (!g_.darts.count(x) && !g_.darts.count(y) && comps[root].vertices.empty())
        comps[root].free_orbit = {x, y};
    }
    for (auto& [root, c] : comps) components_.push_back(c);
  }

  bool arc_compatible(const Id& a, const Id& b) const {
    if (g_.darts.count(a) != h_.darts.count(b)) return false;
    if (g_.boundary.count(a) != h_.boundary.count(b)) return false;
    if (opts_.src_colors &&
        opts_.src_colors->at(a) != opts_.dst_colors->at(b))
      return false;
    auto it = opts_.forced_arcs.find(a);
    if (it != opts_.forced_arcs.end() && it->second != b) return false;
    return true;
  }

  // Assign a -> b together with the involution partner, propagating new
  // vertex assignments into the queue.  Returns false (after rolling back
  // nothing; caller unwinds via the undo log) if inconsistent.
  bool assign_arc(const Id& a, const Id& b, std::vector<Id>* queue,
                  std::vector<std::function<void()>>* undo) {
    auto it = arc_map_.find(a);
    if (it != arc_map_.end()) return it->second == b;
    if (used_arcs_.count(b)) return false;
    if (!arc_compatible(a, b)) return false;
    arc_map_[a] = b;
    used_arcs_.insert(b);
    undo->push_back([this, a, b] {
      arc_map_.erase(a);
      used_arcs_.erase(b);
    });
    const Id pa = g_.arcs.dagger(a);
    const Id pb = h_.arcs.dagger(b);
    auto pit = arc_map_.find(pa);
    if (pit != arc_map_.end()) {
      if (pit->second != pb) return false;
    } else {
      if (used_arcs_.count(pb) || !arc_compatible(pa, pb)) return false;
      arc_map_[pa] = pb;
      used_arcs_.insert(pb);
      undo->push_back([this, pa, pb] {
        arc_map_.erase(pa);
        used_arcs_.erase(pb);
      });
      if (g_.darts.count(pa)) {
        if (!assign_vertex(g_.target(pa), h_.target(pb), queue, undo))
          return false;
      }
    }
    if (g_.darts.count(a)) {
      if (!assign_vertex(g_.target(a), h_.target(b), queue, undo)) return false;
    }
    return true;
  }

  bool assign_vertex(const Id& v, const Id& w, std::vector<Id>* queue,
                     std::vector<std::function<void()>>* undo) {
    auto it = vertex_map_.find(v);
    if (it != vertex_map_.end()) return it->second == w;
    if (used_vertices_.count(w)) return false;
    if (g_.valence(v) != h_.valence(w)) return false;
    if (opts_.vertex_ok && !opts_.vertex_ok(v, w)) return false;
    vertex_map_[v] = w;
    used_vertices_.insert(w);
    queue->push_back(v);
    undo->push_back([this, v, w] {
      vertex_map_.erase(v);
      used_vertices_.erase(w);
      queue_.pop_back();  // undos run in reverse, so v is on top here
    });
    return true;
  }

  void unwind(std::vector<std::function<void()>>& undo, std::size_t mark) {
    while (undo.size() > mark) {
      undo.back()();
      undo.pop_back();
    }
  }

  // Match the neighbourhood of queued vertices, then move to the next
  // component choice point.
  void step(std::size_t comp_idx) {
    if (done_) return;
    if (!queue_.empty()) {
      const Id v = queue_.back();
      queue_.pop_back();
      match_nbhd(v, to_vector(g_.nbhd(v)), 0, comp_idx);
      queue_.push_back(v);
      return;
    }
    if (comp_idx == components_.size()) {
      emit();
      return;
    }
    const Component& c = components_[comp_idx];
    std::vector<std::function<void()>> undo;
    if (c.free_orbit) {
      const auto [x, y] = *c.free_orbit;
      for (const auto& [x2, y2] : h_.arcs.orbits()) {
        for (const auto& [bx, by] :
             {std::make_pair(x2, y2), std::make_pair(y2, x2)}) {
          std::size_t mark = undo.size();
          if (assign_arc(x, bx, &queue_, &undo) &&
              assign_arc(y, by, &queue_, &undo))
            step(comp_idx + 1);
          unwind(undo, mark);
          if (done_) return;
        }
      }
      return;
    }
    // root the component at its first vertex
    const Id root = c.vertices.front();
    if (vertex_map_.count(root)) {  // already reached from a previous assign
      step(comp_idx + 1);
      return;
    }
    for (const auto& w : h_.vertices) {
      std::size_t mark = undo.size();
      if (assign_vertex(root, w, &queue_, &undo)) step(comp_idx + 1);
      unwind(undo, mark);
      if (done_) return;
    }
  }

  void match_nbhd(const Id& v, const std::vector<Id>& ds, std::size_t k,
                  std::size_t comp_idx) {
    if (done_) return;
    if (k == ds.size()) {
      step(comp_idx);
      return;
    }
    const Id& d = ds[k];
    const Id& w = vertex_map_.at(v);
    auto it = arc_map_.find(d);
    if (it != arc_map_.end()) {
      if (h_.darts.count(it->second) && h_.target(it->second) == w)
        match_nbhd(v, ds, k + 1, comp_idx);
      return;
    }
    std::vector<std::function<void()>> undo;
    for (const auto& d2 : h_.nbhd(w)) {
      std::size_t mark = undo.size();
      if (assign_arc(d, d2, &queue_, &undo)) match_nbhd(v, ds, k + 1, comp_idx);
      unwind(undo, mark);
      if (done_) return;
    }
  }

  void emit() {
    GraphIso iso{arc_map_, vertex_map_};
    if (opts_.accept && !opts_.accept(iso)) return;
    found_.push_back(std::move(iso));
    if (found_.size() >= opts_.limit) done_ = true;
  }

  const Graph& g_;
  const Graph& h_;
  const IsoOptions& opts_;
  std::vector<Component> components_;
  IdMap<Id> arc_map_;
  IdMap<Id> vertex_map_;
  IdSet used_arcs_;
  IdSet used_vertices_;
  std::vector<Id> queue_;
  std::vector<GraphIso> found_;
  bool done_ = false;
};

}  // namespace detail

/// All isomorphisms g -> h, in a deterministic order.
inline std::vector<GraphIso> isomorphisms(const Graph& g, const Graph& h,
                                          const IsoOptions& opts = {}) {
  if (opts.src_colors || opts.dst_colors)
    check(opts.src_colors && opts.dst_colors, "ColorMismatch",
          "colored isomorphism search needs both colorings");
  auto out = detail::IsoSearch(g, h, opts).run();
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<GraphIso> first_iso(const Graph& g, const Graph& h,
                                         IsoOptions opts = {}) {
  opts.limit = 1;
  auto all = detail::IsoSearch(g, h, opts).run();
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline bool iso_exists(const Graph& g, const Graph& h) {
  return first_iso(g, h).has_value();
}

inline std::vector<GraphIso> automorphisms(const Graph& g) {
  return isomorphisms(g, g);
}

/// Isomorphisms of colored graphs over fixed boundary identifications:
/// z with zeta' o z = zeta and z o f = f' ("comma object" isos).
inline std::vector<GraphIso> comma_isomorphisms(const ColoredGraph& a,
                                                const IdMap<Id>& f,
                                                const ColoredGraph& b,
                                                const IdMap<Id>& f2) {
  if (key_set(f) != key_set(f2)) return {};
  IsoOptions opts;
  opts.src_colors = &a.zeta;
  opts.dst_colors = &b.zeta;
  for (const auto& [s, arc] : f) opts.forced_arcs[arc] = f2.at(s);
  return isomorphisms(a.graph, b.graph, opts);
}

}  // namespace modgraph
