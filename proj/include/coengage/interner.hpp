#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coengage/types.hpp"

namespace coengage {

// Bijective handle <-> ordinal mapping. Ordinals are assigned by
// lexicographic order of the distinct handles, so the same handle set always
// produces the same ordinals.
class Interner {
public:
  Interner() = default;

  // Sorts and dedupes; empty handles are rejected.
  static Interner from_handles(std::vector<std::string> handles);

  std::optional<NodeId> find(std::string_view handle) const;
  NodeId require(std::string_view handle) const; // NotFoundError if absent

  const std::string& handle(NodeId id) const; // NotFoundError if out of range
  std::size_t size() const { return handles_.size(); }
  const std::vector<std::string>& handles() const { return handles_; }

  Interner(const Interner& other) : handles_(other.handles_) { rebuild_index(); }
  Interner& operator=(const Interner& other);
  Interner(Interner&& other) noexcept : handles_(std::move(other.handles_)) { rebuild_index(); }
  Interner& operator=(Interner&& other) noexcept;

private:
  void rebuild_index();

  std::vector<std::string> handles_; // sorted; ordinal == index
  // Views point into handles_, which never changes after construction.
  std::unordered_map<std::string_view, NodeId> index_;
};

} // namespace coengage
