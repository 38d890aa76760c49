#pragma once

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace formation_lab {

enum class ErrorKind {
  ClosureTooLarge,
  InvalidPermutation,
  ParentMismatch,
  NotNormal,
  SectionNotGInvariant,
  BoundExceeded,
  TrivialGroup,
  SeedNotChain,
  SeedNotNormal,
  ResidualVerificationFailed,
  HypercenterMismatch,
  FormationNotEligible,
  NotSupported,
  SubgroupEnumerationBound,
  ParseError,
  IoError,
  OutOfRange,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ClosureTooLarge: return "ClosureTooLarge";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::ParentMismatch: return "ParentMismatch";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::SectionNotGInvariant: return "SectionNotGInvariant";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::TrivialGroup: return "TrivialGroup";
    case ErrorKind::SeedNotChain: return "SeedNotChain";
    case ErrorKind::SeedNotNormal: return "SeedNotNormal";
    case ErrorKind::ResidualVerificationFailed: return "ResidualVerificationFailed";
    case ErrorKind::HypercenterMismatch: return "HypercenterMismatch";
    case ErrorKind::FormationNotEligible: return "FormationNotEligible";
    case ErrorKind::NotSupported: return "NotSupported";
    case ErrorKind::SubgroupEnumerationBound: return "SubgroupEnumerationBound";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Size caps shared by every algorithm in the library.
///
/// `max_group_order` bounds closures (and therefore multiplication tables),
/// `normal_enumeration` bounds the full normal-subgroup lattice and
/// `subgroup_enumeration` bounds the full subgroup lattice used by the
/// factorization search.
struct Limits {
  std::size_t max_group_order = 10000;
  std::size_t normal_enumeration = 2000;
  std::size_t subgroup_enumeration = 120;
  std::size_t axiom_check_exhaustive = 512;
};

namespace detail {
inline Limits initial_limits() {
  Limits lim;
  if (const char* env = std::getenv("FORMATION_LAB_MAX_ORDER")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      lim.max_group_order = static_cast<std::size_t>(v);
    }
  }
  return lim;
}
}  // namespace detail

/// Process-wide limits. Set them before spawning worker threads.
inline Limits& limits() {
  static Limits lim = detail::initial_limits();
  return lim;
}

/// Restores the previous limits on scope exit.
class ScopedLimits {
 public:
  explicit ScopedLimits(const Limits& next) : saved_(limits()) { limits() = next; }
  ~ScopedLimits() { limits() = saved_; }
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
};

}  // namespace formation_lab
