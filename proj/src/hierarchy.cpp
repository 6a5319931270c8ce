#include "gme/hierarchy.hpp"

#include <algorithm>
#include <map>

#include "gme/parallel.hpp"

namespace gme {

PartitionGme partition_gme(const ComplexTensor& t, const Partition& p, const OptimizerConfig& cfg) {
    const ComplexTensor merged = merge_indices(t, p);
    const GmeResult r = best_rank_one(merged, cfg);
    return {p, merged.dims(), r.overlap, r.entanglement};
}

HierarchyReport hierarchy_report(const ComplexTensor& t, const OptimizerConfig& cfg, bool group_by_signature,
                                 std::string source_id) {
    cfg.validate();
    const auto partitions = enumerate_partitions(t.order());

    OptimizerConfig inner = cfg;
    inner.threads = 1;
    std::vector<HierarchyRow> rows(partitions.size(), HierarchyRow{partitions.front(), {}, {}, 0.0, 0.0});
    parallel_for(partitions.size(), cfg.threads, [&](std::size_t i) {
        const auto r = partition_gme(t, partitions[i], inner);
        rows[i] = HierarchyRow{partitions[i], partitions[i].signature(), r.merged_dims, r.overlap, r.entanglement};
    });

    HierarchyReport report;
    report.source_id = std::move(source_id);
    report.by_signature = group_by_signature;
    if (!group_by_signature) {
        report.rows = std::move(rows);
        return report;
    }

    // Key orders by block count first, then lexicographically by signature.
    using Key = std::pair<std::size_t, std::vector<std::size_t>>;
    std::map<Key, std::size_t> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Key key{rows[i].signature.size(), rows[i].signature};
        auto [it, inserted] = best.emplace(key, i);
        if (!inserted && rows[i].overlap > rows[it->second].overlap + 1e-12) it->second = i;
    }
    for (const auto& [key, i] : best) report.rows.push_back(rows[i]);
    return report;
}

} // namespace gme
