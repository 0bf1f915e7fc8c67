#pragma once

#include "modgraph/util.hpp"

namespace modgraph {

/// A finite set with a self-inverse map x -> x^dagger.  Fixed points are
/// permitted here; arc sets of graphs additionally require the involution
/// to be free, which is enforced by graph validation, not by this class.
class InvolutiveSet {
 public:
  InvolutiveSet() = default;

  /// Build from involution classes.  Each class has one element (a fixed
  /// point) or two (a swapped pair); every element must appear exactly once.
  static InvolutiveSet make(const std::vector<std::vector<Id>>& classes) {
    InvolutiveSet out;
    for (const auto& cls : classes) {
      check(cls.size() == 1 || cls.size() == 2, "BadPairingClass",
            "involution class must have 1 or 2 elements, got " +
                std::to_string(cls.size()));
      for (const auto& x : cls)
        check(!out.dagger_.count(x), "DuplicateElement",
              "element '" + x + "' appears twice in pairing");
      if (cls.size() == 1) {
        out.dagger_[cls[0]] = cls[0];
      } else {
        check(cls[0] != cls[1], "DuplicateElement",
              "element '" + cls[0] + "' appears twice in pairing");
        out.dagger_[cls[0]] = cls[1];
        out.dagger_[cls[1]] = cls[0];
      }
    }
    return out;
  }

  /// Variant taking the carrier separately, checking the pairing covers it.
  static InvolutiveSet make(const std::vector<Id>& elements,
                            const std::vector<std::vector<Id>>& classes) {
    IdSet carrier;
    for (const auto& e : elements) {
      check(!carrier.count(e), "DuplicateElement",
            "element '" + e + "' listed twice");
      carrier.insert(e);
    }
    for (const auto& cls : classes)
      for (const auto& x : cls)
        check(carrier.count(x) > 0, "UnknownElement",
              "pairing mentions '" + x + "' which is not an element");
    InvolutiveSet out = make(classes);
    for (const auto& e : carrier)
      check(out.dagger_.count(e) > 0, "MissingFromPairing",
            "element '" + e + "' is not covered by the pairing");
    return out;
  }

  bool contains(const Id& x) const { return dagger_.count(x) > 0; }
  std::size_t size() const { return dagger_.size(); }
  bool empty() const { return dagger_.empty(); }

  IdSet elements() const { return key_set(dagger_); }

  const Id& dagger(const Id& x) const {
    auto it = dagger_.find(x);
    check(it != dagger_.end(), "UnknownElement",
          "'" + x + "' is not in the involutive set");
    return it->second;
  }

  bool is_fixed(const Id& x) const { return dagger(x) == x; }

  bool fixed_point_free() const {
    for (const auto& [x, y] : dagger_)
      if (x == y) return false;
    return true;
  }

  /// One pair (x, x^dagger) per involution class, x <= x^dagger, sorted.
  std::vector<std::pair<Id, Id>> orbits() const {
    std::vector<std::pair<Id, Id>> out;
    for (const auto& [x, y] : dagger_)
      if (x <= y) out.emplace_back(x, y);
    return out;
  }

  bool operator==(const InvolutiveSet& o) const { return dagger_ == o.dagger_; }
  bool operator!=(const InvolutiveSet& o) const { return !(*this == o); }

 private:
  IdMap<Id> dagger_;
};

/// An object (S, xi) of Bij_C: a finite carrier with a total coloring.
/// The slot order is the sorted order of carrier names; fibers of operads
/// are keyed by the multiset of colors, which is the Bij_C-iso class.
struct ColoredObject {
  IdMap<Id> coloring;  // slot -> color, total on the carrier

  IdSet carrier() const { return key_set(coloring); }
  std::size_t size() const { return coloring.size(); }

  /// Iso class in Bij_C: the sorted multiset of colors.
  std::vector<Id> color_class() const {
    std::vector<Id> cs = value_vector(coloring);
    std::sort(cs.begin(), cs.end());
    return cs;
  }

  /// Canonical slot order: by (color, slot name).  Two objects of the same
  /// class are identified through this ordering.
  std::vector<Id> canonical_slots() const {
    std::vector<Id> slots = to_vector(carrier());
    std::stable_sort(slots.begin(), slots.end(), [&](const Id& a, const Id& b) {
      return std::make_pair(coloring.at(a), a) < std::make_pair(coloring.at(b), b);
    });
    return slots;
  }

  bool operator==(const ColoredObject& o) const { return coloring == o.coloring; }
  bool operator!=(const ColoredObject& o) const { return !(*this == o); }

  std::string str() const {
    std::vector<std::string> parts;
    for (const auto& [s, c] : coloring) parts.push_back(s + ":" + c);
    return "(" + join(parts, ",") + ")";
  }
};

/// Is f a morphism (S,xi) -> (S',xi') of Bij_C, i.e. a color-preserving
/// bijection?  Returns false rather than throwing on non-bijections.
inline bool is_bij_morphism(const IdMap<Id>& f, const ColoredObject& src,
                            const ColoredObject& dst) {
  if (key_set(f) != src.carrier()) return false;
  IdSet image;
  for (const auto& [s, t] : f) {
    if (!dst.coloring.count(t)) return false;
    if (!image.insert(t).second) return false;  // not injective
    if (src.coloring.at(s) != dst.coloring.at(t)) return false;
  }
  return image == dst.carrier();
}

/// The unique involutive extension of xi : S -> C to the ambient
/// involutive set `two_s` (whose involution pairs each s with its partner):
/// xi*(s) = xi(s) and xi*(s^dagger) = xi(s)^dagger.
inline IdMap<Id> involutive_extension(const InvolutiveSet& two_s,
                                      const IdMap<Id>& xi,
                                      const InvolutiveSet& colors) {
  IdMap<Id> out;
  for (const auto& [s, c] : xi) {
    check(colors.contains(c), "UnknownElement", "color '" + c + "' unknown");
    out[s] = c;
    out[two_s.dagger(s)] = colors.dagger(c);
  }
  for (const auto& a : two_s.elements())
    check(out.count(a) > 0, "MissingFromPairing",
          "extension does not cover '" + a + "'");
  return out;
}

}  // namespace modgraph
