#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polar/core/error.hpp"
#include "polar/core/record.hpp"
#include "polar/core/schema.hpp"

namespace polar {

// Immutable ordered collection of records that all belong to one subtask.
class Dataset {
 public:
  explicit Dataset(Subtask subtask) : subtask_(subtask) {}

  Dataset(Subtask subtask, std::vector<TextRecord> records)
      : subtask_(subtask), records_(std::move(records)) {
    index_.reserve(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const auto& r = records_[i];
      validate_record(r, subtask_);
      if (!index_.emplace(r.id, i).second) throw ValidationError("duplicate id '" + r.id + "'");
    }
    for (const auto& r : records_) {
      if (!r.parent_id) continue;
      const auto* parent = find(*r.parent_id);
      if (parent != nullptr && parent->labels != r.labels) {
        throw ValidationError("derived record '" + r.id + "' has labels differing from parent '" +
                              *r.parent_id + "'");
      }
    }
  }

  Subtask subtask() const noexcept { return subtask_; }
  const SubtaskSchema& schema() const { return schema_for(subtask_); }
  std::span<const TextRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const TextRecord& operator[](std::size_t i) const { return records_[i]; }

  const TextRecord* find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &records_[it->second];
  }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.subtask_ == b.subtask_ && a.records_ == b.records_;
  }

 private:
  Subtask subtask_;
  std::vector<TextRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace polar
