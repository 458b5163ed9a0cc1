#include "povm_discrim/outcomes.hpp"

#include <algorithm>
#include <numeric>

#include "povm_discrim/error.hpp"

namespace povm_discrim {

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t v : mapping_) {
    if (v >= mapping_.size() || seen[v])
      throw Error(ErrorKind::InvalidArgument, "permutation mapping is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t k) {
  std::vector<std::size_t> m(k);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(mapping_.size());
  for (std::size_t j = 0; j < mapping_.size(); ++j) inv[mapping_[j]] = j;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw Error(ErrorKind::DimensionMismatch, "permutation sizes differ");
  std::vector<std::size_t> m(size());
  for (std::size_t j = 0; j < size(); ++j) m[j] = mapping_[other.mapping_[j]];
  return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
  for (std::size_t j = 0; j < mapping_.size(); ++j)
    if (mapping_[j] != j) return false;
  return true;
}

OutcomeSequence Permutation::act(const OutcomeSequence& s) const {
  if (s.k != size()) throw Error(ErrorKind::DimensionMismatch, "alphabet size differs from permutation size");
  OutcomeSequence out{s.indices, s.k};
  for (auto& j : out.indices) j = mapping_.at(j);
  return out;
}

OutcomePattern canonicalize(const OutcomeSequence& s) {
  OutcomePattern p;
  p.canonical.reserve(s.indices.size());
  std::vector<std::size_t> first_seen;  // first_seen[b] = original value of block b
  for (std::size_t v : s.indices) {
    auto it = std::find(first_seen.begin(), first_seen.end(), v);
    if (it == first_seen.end()) {
      p.canonical.push_back(first_seen.size());
      first_seen.push_back(v);
    } else {
      p.canonical.push_back(static_cast<std::size_t>(it - first_seen.begin()));
    }
  }
  p.block_count = first_seen.size();
  return p;
}

std::vector<OutcomePattern> enumerate_patterns(std::size_t n, std::size_t k) {
  if (n == 0 || k == 0) throw Error(ErrorKind::InvalidArgument, "n and k must be positive");
  std::vector<OutcomePattern> out;
  // Depth-first generation in lexicographic order; `top` is the block count so far.
  std::vector<std::size_t> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t top) -> void {
    if (pos == n) {
      if (out.size() >= kMaxPatterns)
        throw Error(ErrorKind::Overflow, "more than 10^6 outcome patterns");
      out.push_back(OutcomePattern{cur, top});
      return;
    }
    const std::size_t limit = std::min(top + 1, k);
    for (std::size_t v = 0; v < limit; ++v) {
      cur[pos] = v;
      self(self, pos + 1, std::max(top, v + 1));
    }
  };
  rec(rec, 1, 1);
  return out;
}

std::vector<OutcomeSequence> expand_pattern(const OutcomePattern& p, std::size_t k) {
  if (p.block_count > k) throw Error(ErrorKind::InvalidArgument, "pattern has more blocks than outcomes");
  std::vector<OutcomeSequence> out;
  std::vector<std::size_t> labels(p.block_count);
  std::vector<bool> used(k, false);
  auto rec = [&](auto&& self, std::size_t b) -> void {
    if (b == p.block_count) {
      OutcomeSequence s{{}, k};
      s.indices.reserve(p.canonical.size());
      for (std::size_t c : p.canonical) s.indices.push_back(labels[c]);
      out.push_back(std::move(s));
      return;
    }
    for (std::size_t v = 0; v < k; ++v) {
      if (used[v]) continue;
      used[v] = true;
      labels[b] = v;
      self(self, b + 1);
      used[v] = false;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<OutcomeSequence> all_sequences(std::size_t n, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > kMaxPatterns * 10 / k) throw Error(ErrorKind::Overflow, "too many outcome sequences");
    total *= k;
  }
  std::vector<OutcomeSequence> out;
  out.reserve(total);
  OutcomeSequence s{std::vector<std::size_t>(n, 0), k};
  for (std::size_t c = 0; c < total; ++c) {
    out.push_back(s);
    for (std::size_t pos = n; pos-- > 0;) {
      if (++s.indices[pos] < k) break;
      s.indices[pos] = 0;
    }
  }
  return out;
}

std::string pattern_name(const OutcomePattern& p) {
  static constexpr char kLetters[] = "xyzuvwabcdefghijklmnopqrst";
  std::string name;
  bool compact = p.block_count <= 26;
  for (std::size_t c : p.canonical) {
    if (compact) {
      name.push_back(kLetters[c]);
    } else {
      if (!name.empty()) name.push_back('.');
      name += "x" + std::to_string(c);
    }
  }
  return name;
}

std::optional<OutcomePattern> parse_pattern_name(const std::string& name) {
  static constexpr std::string_view kLetters = "xyzuvwabcdefghijklmnopqrst";
  if (name.empty()) return std::nullopt;
  OutcomePattern p;
  for (char ch : name) {
    auto pos = kLetters.find(ch);
    if (pos == std::string_view::npos) return std::nullopt;
    if (pos > p.block_count) return std::nullopt;
    if (pos == p.block_count) ++p.block_count;
    p.canonical.push_back(pos);
  }
  return p;
}

std::size_t orbit_size(std::size_t blocks, std::size_t k) {
  if (blocks > k) return 0;
  std::size_t size = 1;
  for (std::size_t i = 0; i < blocks; ++i) size *= k - i;
  return size;
}

}  // namespace povm_discrim
