#include "coengage/interner.hpp"

#include <algorithm>

namespace coengage {

Interner Interner::from_handles(std::vector<std::string> handles) {
  for (const auto& h : handles) {
    if (h.empty())
      throw ValidationError("empty handle cannot be interned");
  }
  std::sort(handles.begin(), handles.end());
  handles.erase(std::unique(handles.begin(), handles.end()), handles.end());
  if (handles.size() > static_cast<std::size_t>(UINT32_MAX))
    throw CapacityError("interning", "more than 2^32-1 distinct handles");
  Interner in;
  in.handles_ = std::move(handles);
  in.rebuild_index();
  return in;
}

void Interner::rebuild_index() {
  index_.clear();
  index_.reserve(handles_.size());
  for (NodeId i = 0; i < handles_.size(); ++i)
    index_.emplace(std::string_view(handles_[i]), i);
}

Interner& Interner::operator=(const Interner& other) {
  if (this != &other) {
    handles_ = other.handles_;
    rebuild_index();
  }
  return *this;
}

Interner& Interner::operator=(Interner&& other) noexcept {
  if (this != &other) {
    handles_ = std::move(other.handles_);
    rebuild_index();
  }
  return *this;
}

std::optional<NodeId> Interner::find(std::string_view handle) const {
  auto it = index_.find(handle);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

NodeId Interner::require(std::string_view handle) const {
  auto id = find(handle);
  if (!id)
    throw NotFoundError("unknown handle: " + std::string(handle));
  return *id;
}

const std::string& Interner::handle(NodeId id) const {
  if (id >= handles_.size())
    throw NotFoundError("node ordinal out of range: " + std::to_string(id));
  return handles_[id];
}

} // namespace coengage
