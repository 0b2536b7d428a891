#include "amcheck/permutation.hpp"

#include <numeric>
#include <sstream>

#include "amcheck/errors.hpp"

namespace amc {

Permutation::Permutation(int degree) : img_(degree) {
  if (degree < 1) throw InputError("permutation degree must be >= 1");
  std::iota(img_.begin(), img_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  const int n = degree();
  if (n < 1) throw InputError("permutation degree must be >= 1");
  std::vector<char> seen(n, 0);
  for (int v : img_) {
    if (v < 0 || v >= n) throw InputError("permutation image out of range");
    if (seen[v]) throw InputError("permutation image repeated; not a bijection");
    seen[v] = 1;
  }
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < degree(); ++i) inv[img_[i]] = i;
  Permutation p;
  p.img_ = std::move(inv);
  return p;
}

long long Permutation::element_order() const {
  long long ord = 1;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (int j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string Permutation::to_cycles() const {
  std::ostringstream out;
  std::vector<char> seen(img_.size(), 0);
  bool moved_any = false;
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || img_[i] == i) {
      seen[i] = 1;
      continue;
    }
    moved_any = true;
    out << '(';
    bool first = true;
    for (int j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      if (!first) out << ',';
      out << (j + 1);  // 1-indexed output
      first = false;
    }
    out << ')';
  }
  if (!moved_any) return "()";
  return out.str();
}

Permutation Permutation::from_cycles(const std::string& text, int degree) {
  if (degree < 1) throw InputError("permutation degree must be >= 1");
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  std::vector<char> used(degree, 0);

  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i == text.size()) throw InputError("empty permutation text");
  bool any_cycle = false;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(')
      throw InputError("expected '(' at position " + std::to_string(i) +
                       " in \"" + text + "\"");
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      skip_ws();
      size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (i == start)
        throw InputError("expected point number at position " +
                         std::to_string(i) + " in \"" + text + "\"");
      int pt = std::stoi(text.substr(start, i - start));
      if (pt < 1 || pt > degree)
        throw InputError("point " + std::to_string(pt) +
                         " out of range 1.." + std::to_string(degree));
      if (used[pt - 1])
        throw InputError("point " + std::to_string(pt) + " repeated");
      used[pt - 1] = 1;
      cyc.push_back(pt - 1);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') break;
      if (i < text.size())
        throw InputError("expected ',' or ')' at position " +
                         std::to_string(i) + " in \"" + text + "\"");
    }
    if (i == text.size() || text[i] != ')')
      throw InputError("unterminated cycle in \"" + text + "\"");
    ++i;
    any_cycle = true;
    if (cyc.size() == 1)
      throw InputError("cycle of length 1 is not allowed; omit fixed points");
    for (size_t k = 0; k < cyc.size(); ++k)
      img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  if (!any_cycle) throw InputError("no cycles found in \"" + text + "\"");
  return Permutation(std::move(img));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw InputError("cannot compose permutations of different degree");
  std::vector<int> img(a.degree());
  for (int i = 0; i < a.degree(); ++i) img[i] = b(a(i));
  return Permutation(std::move(img));
}

Permutation conjugate(const Permutation& g, const Permutation& by) {
  return compose(compose(by.inverse(), g), by);
}

}  // namespace amc
