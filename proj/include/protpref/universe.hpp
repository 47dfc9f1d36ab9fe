#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "protpref/contacts.hpp"

namespace protpref {

/// Ordered set of alternatives (interaction classes, rendered "X-Y").
struct Universe {
  std::string id;
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
  std::optional<std::size_t> index_of(std::string_view label) const;
  std::size_t require_index(std::string_view label) const;

  friend bool operator==(const Universe& a, const Universe& b) {
    return a.labels == b.labels;
  }
};

using UniversePtr = std::shared_ptr<const Universe>;

UniversePtr make_universe(std::string id, std::vector<std::string> labels);

/// "aa210" (with homopairs) or "aa190".
UniversePtr amino_universe(bool include_homopairs);

/// First m classes of the 210-class universe; used for synthetic profiles
/// and exhaustive searches.
UniversePtr synthetic_universe(std::size_t m);

bool same_universe(const UniversePtr& a, const UniversePtr& b);

}  // namespace protpref
