#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "polar/core/dataset.hpp"
#include "polar/core/unicode.hpp"

namespace polar::augment {

// Collapses records with identical NFC text. An original record wins over
// derived ones; otherwise the first in ingestion order wins. Survivors keep
// their input order.
inline std::vector<TextRecord> dedup_records(std::span<const TextRecord> records) {
  std::unordered_map<std::string, std::size_t> keeper;
  keeper.reserve(records.size());
  std::vector<std::string> keys;
  keys.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    keys.push_back(unicode::nfc(records[i].text));
    auto [it, inserted] = keeper.emplace(keys.back(), i);
    if (!inserted && records[it->second].provenance != Provenance::original &&
        records[i].provenance == Provenance::original) {
      it->second = i;
    }
  }
  std::vector<TextRecord> out;
  out.reserve(keeper.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (keeper.at(keys[i]) == i) out.push_back(records[i]);
  }
  return out;
}

inline Dataset dedup(const Dataset& ds) { return Dataset(ds.subtask(), dedup_records(ds.records())); }

}  // namespace polar::augment
