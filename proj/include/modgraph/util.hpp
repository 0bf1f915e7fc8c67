#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace modgraph {

using Id = std::string;
using IdSet = std::set<Id>;
template <typename V>
using IdMap = std::map<Id, V>;

/// All recoverable failures carry a short machine-readable code
/// (e.g. "FixedArc", "VertexDoubleCover") next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

inline void check(bool ok, const std::string& code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

template <typename C>
std::vector<typename C::value_type> to_vector(const C& c) {
  return std::vector<typename C::value_type>(c.begin(), c.end());
}

template <typename K, typename V>
std::set<K> key_set(const std::map<K, V>& m) {
  std::set<K> out;
  for (const auto& [k, v] : m) out.insert(k);
  return out;
}

template <typename K, typename V>
std::vector<V> value_vector(const std::map<K, V>& m) {
  std::vector<V> out;
  out.reserve(m.size());
  for (const auto& [k, v] : m) out.push_back(v);
  return out;
}

template <typename T>
bool is_subset(const std::set<T>& a, const std::set<T>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

template <typename T>
std::set<T> set_union(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

template <typename T>
std::set<T> set_difference(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.begin()));
  return out;
}

template <typename T>
std::set<T> set_intersection(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

template <typename C>
std::string join(const C& parts, const std::string& sep) {
  std::ostringstream os;
  bool first = true;
  for (const auto& p : parts) {
    if (!first) os << sep;
    os << p;
    first = false;
  }
  return os.str();
}

inline std::string brace_list(const IdSet& s) { return "{" + join(s, ",") + "}"; }

/// Disjoint-set forest over string identifiers; used for connectivity
/// tests and for arc gluing in coequalizers.
class UnionFind {
 public:
  void add(const Id& x) { parent_.emplace(x, x); }
  bool contains(const Id& x) const { return parent_.count(x) > 0; }

  const Id& find(const Id& x) {
    Id& p = parent_.at(x);
    if (p == x) return p;
    p = find(p);
    return p;
  }

  void unite(const Id& a, const Id& b) {
    const Id ra = find(a);
    const Id rb = find(b);
    if (ra == rb) return;
    // smaller representative wins, for deterministic class names
    if (ra < rb)
      parent_[rb] = ra;
    else
      parent_[ra] = rb;
  }

  std::size_t class_count() {
    std::set<Id> roots;
    for (const auto& [x, p] : parent_) roots.insert(find(x));
    return roots.size();
  }

 private:
  std::map<Id, Id> parent_;
};

/// A name not colliding with anything in `taken`, built from `base` by
/// appending primes.
inline Id fresh_name(Id base, const IdSet& taken) {
  while (taken.count(base)) base += "'";
  return base;
}

}  // namespace modgraph
