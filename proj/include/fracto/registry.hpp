#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracto/core.hpp"

namespace fracto {

/// Named convexities sharing one ground space.
class Registry {
 public:
  explicit Registry(GroundSpace space) : space_(space) {}

  const GroundSpace& space() const { return space_; }

  void add(ConvPtr conv) {
    if (!(conv->space() == space_))
      throw SpaceMismatch("convexity " + conv->id() +
                          " does not match the registry space");
    if (map_.count(conv->id()))
      throw DuplicateId("convexity id " + conv->id() + " already registered");
    order_.push_back(conv->id());
    map_[conv->id()] = std::move(conv);
  }

  ConvPtr get(const std::string& id) const {
    auto it = map_.find(id);
    if (it == map_.end())
      throw UnknownConvexityId("no convexity registered under id " + id);
    return it->second;
  }

  const std::vector<std::string>& ids() const { return order_; }

 private:
  GroundSpace space_;
  std::map<std::string, ConvPtr> map_;
  std::vector<std::string> order_;  // file/declaration order
};

}  // namespace fracto
