#pragma once

#include <string>
#include <vector>

namespace amc {

// A permutation of the points {0, ..., n-1}, stored as its image array.
// Points are 0-indexed internally; all textual I/O (disjoint cycle
// notation) is 1-indexed.
//
// Composition convention, used project-wide: the product a*b means
// "apply a first, then b", i.e. (a*b)(x) = b(a(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int degree);  // identity
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int degree) { return Permutation(degree); }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int pt) const { return img_[pt]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  Permutation inverse() const;
  long long element_order() const;  // lcm of cycle lengths

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  // Lexicographic order on image tuples; this is the canonical element
  // order everywhere in the project.
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  // "(1,2,3)(4,5)" with cycles sorted by smallest moved point, each cycle
  // written from its smallest point; the identity prints as "()".
  std::string to_cycles() const;
  // Parses disjoint cycle notation; throws InputError on malformed text,
  // out-of-range points, or repeated points.
  static Permutation from_cycles(const std::string& text, int degree);

 private:
  std::vector<int> img_;
};

// Apply a first, then b.
Permutation compose(const Permutation& a, const Permutation& b);

// by^-1 * g * by (in the left-to-right product above).
Permutation conjugate(const Permutation& g, const Permutation& by);

}  // namespace amc
