#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rpp/types.hpp"

namespace rpp {

// On-disk corpus: line-delimited JSON records. The first line is a manifest
// carrying the corpus window and time unit; item records declare an item
// (and may override the window); event records carry one arrival each.
//
//   {"schema":"rpp-dataset/1","window_end":10.0,"time_unit":"years"}
//   {"item":"a","window_end":12.0}
//   {"item":"a","t":0.5}
//
// Items appear in the output in first-appearance order. Unknown fields are
// ignored with a warning on stderr (once per field name).
struct Dataset {
    double window_end = 0.0;
    std::string time_unit = "years";
    std::vector<EventSequence> sequences;
};

Dataset read_dataset(std::istream& in, const std::string& source_name);
Dataset read_dataset(const std::string& path);
void write_dataset(const Dataset& dataset, std::ostream& out);
void write_dataset(const Dataset& dataset, const std::string& path);

// Ground-truth sidecar for simulated corpora.
struct TruthSidecar {
    bool has_prior = false;
    PriorParams prior;
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::vector<std::string> ids;
    std::vector<ItemParams> params;  // aligned with ids
};

TruthSidecar read_truth(const std::string& path);
void write_truth(const TruthSidecar& truth, const std::string& path);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters. Reports
// reference their inputs through these digests.
std::string fnv1a64_file(const std::string& path);

}  // namespace rpp
