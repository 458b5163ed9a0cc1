#pragma once

// Orbits of n-shot outcome sequences under relabeling of the k outcomes.
//
// An apparatus with unlabeled outcomes only reveals which shots agreed with
// which, so a sequence (j_1, ..., j_n) is observed up to a permutation of
// {0, ..., k-1}. Each orbit is represented by its restricted-growth string:
// the sequence relabeled by order of first appearance.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace povm_discrim {

struct OutcomeSequence {
  std::vector<std::size_t> indices;
  std::size_t k = 0;

  std::size_t shots() const noexcept { return indices.size(); }
  friend bool operator==(const OutcomeSequence&, const OutcomeSequence&) = default;
};

struct OutcomePattern {
  std::vector<std::size_t> canonical;
  std::size_t block_count = 0;

  std::size_t shots() const noexcept { return canonical.size(); }
  friend bool operator==(const OutcomePattern&, const OutcomePattern&) = default;
  friend auto operator<=>(const OutcomePattern& a, const OutcomePattern& b) {
    return a.canonical <=> b.canonical;
  }
};

class Permutation {
public:
  // Throws InvalidArgument unless `mapping` is a bijection on {0, ..., size-1}.
  explicit Permutation(std::vector<std::size_t> mapping);
  static Permutation identity(std::size_t k);

  std::size_t size() const noexcept { return mapping_.size(); }
  std::size_t operator()(std::size_t j) const { return mapping_.at(j); }
  const std::vector<std::size_t>& mapping() const noexcept { return mapping_; }

  Permutation inverse() const;
  // (this * other)(j) = this(other(j))
  Permutation compose(const Permutation& other) const;
  bool is_identity() const;

  // pi . (j_1, ..., j_n) = (pi(j_1), ..., pi(j_n))
  OutcomeSequence act(const OutcomeSequence& s) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<std::size_t> mapping_;
};

// Restricted-growth string of `s`.
OutcomePattern canonicalize(const OutcomeSequence& s);

inline constexpr std::size_t kMaxPatterns = 1'000'000;

// All patterns of length n with at most k blocks, in lexicographic order.
// Throws Overflow if there would be more than kMaxPatterns.
std::vector<OutcomePattern> enumerate_patterns(std::size_t n, std::size_t k);

// Every sequence in the orbit of `p`; k!/(k - block_count)! of them.
std::vector<OutcomeSequence> expand_pattern(const OutcomePattern& p, std::size_t k);

// All k^n sequences in lexicographic order.
std::vector<OutcomeSequence> all_sequences(std::size_t n, std::size_t k);

// Letter name: [0,0,1] -> "xxy". Blocks beyond the 26th use "x<index>".
std::string pattern_name(const OutcomePattern& p);
// Inverse of pattern_name for the letter form; nullopt for malformed names.
std::optional<OutcomePattern> parse_pattern_name(const std::string& name);

// Number of sequences in the orbit of a pattern with `blocks` blocks.
std::size_t orbit_size(std::size_t blocks, std::size_t k);

}  // namespace povm_discrim
