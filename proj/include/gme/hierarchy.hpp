#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gme/optimizer.hpp"
#include "gme/partition.hpp"
#include "gme/tensor.hpp"

namespace gme {

struct PartitionGme {
    Partition partition;
    std::vector<std::size_t> merged_dims;
    double overlap = 0.0;
    double entanglement = 0.0;
};

/// Geometric entanglement with respect to product states over the blocks of
/// `p`, obtained by merging each block into a single index.
PartitionGme partition_gme(const ComplexTensor& t, const Partition& p, const OptimizerConfig& cfg);

struct HierarchyRow {
    Partition partition;            // representative partition for signature rows
    std::vector<std::size_t> signature;
    std::vector<std::size_t> merged_dims;
    double overlap = 0.0;
    double entanglement = 0.0;
};

struct HierarchyReport {
    std::string source_id;
    bool by_signature = false;
    std::vector<HierarchyRow> rows;
};

/// Evaluates every set partition of t's parties (at most 12).
///
/// Per-partition rows follow enumerate_partitions order. With
/// `group_by_signature`, one row per block-size signature keeps the largest
/// overlap over partitions sharing it (the first one on ties); rows are then
/// ordered by block count, then signature.
HierarchyReport hierarchy_report(const ComplexTensor& t, const OptimizerConfig& cfg, bool group_by_signature,
                                 std::string source_id = {});

} // namespace gme
