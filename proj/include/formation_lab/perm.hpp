#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "formation_lab/error.hpp"

namespace formation_lab {

/// A permutation of {0, ..., degree-1}. Products compose left to right:
/// `(p * q)[i] == q[p[i]]`, so points are acted on from the right.
class Permutation {
 public:
  using Point = std::uint16_t;

  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) {
        throw Error(ErrorKind::InvalidPermutation, "image list is not a bijection");
      }
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> img(degree);
    for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
    Permutation p;
    p.images_ = std::move(img);
    return p;
  }

  /// Builds a permutation from disjoint cycles of 1-based points.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<std::size_t>>& cycles) {
    if (degree > 65535) throw Error(ErrorKind::InvalidPermutation, "degree too large");
    Permutation p = identity(degree);
    std::vector<bool> used(degree, false);
    for (const auto& cyc : cycles) {
      for (std::size_t pt : cyc) {
        if (pt < 1 || pt > degree) {
          throw Error(ErrorKind::InvalidPermutation,
                      "point " + std::to_string(pt) + " outside 1.." + std::to_string(degree));
        }
        if (used[pt - 1]) {
          throw Error(ErrorKind::InvalidPermutation,
                      "point " + std::to_string(pt) + " appears in more than one cycle");
        }
        used[pt - 1] = true;
      }
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        p.images_[cyc[i] - 1] = static_cast<Point>(cyc[(i + 1) % cyc.size()] - 1);
      }
    }
    return p;
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Permutation operator*(const Permutation& rhs) const {
    if (rhs.degree() != degree()) {
      throw Error(ErrorKind::InvalidPermutation, "degree mismatch in product");
    }
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = rhs.images_[images_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
    return r;
  }

  /// Disjoint cycles (length >= 2) with 1-based points, each starting at its
  /// smallest point.
  std::vector<std::vector<std::size_t>> cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      std::vector<std::size_t> cyc;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        cyc.push_back(j + 1);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& c : cycles()) {
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace formation_lab
