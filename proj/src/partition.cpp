#include "gme/partition.hpp"

#include <algorithm>
#include <string>

#include "gme/error.hpp"

namespace gme {

Partition::Partition(std::size_t party_count, std::vector<std::vector<std::size_t>> blocks)
    : party_count_(party_count), blocks_(std::move(blocks)) {
    if (party_count_ == 0) throw Error(ErrorCode::InvalidPartition, "partition of zero parties");
    std::vector<int> hits(party_count_, 0);
    for (auto& block : blocks_) {
        if (block.empty()) throw Error(ErrorCode::InvalidPartition, "empty block");
        std::sort(block.begin(), block.end());
        for (auto party : block) {
            if (party >= party_count_) {
                throw Error(ErrorCode::InvalidPartition, "party " + std::to_string(party + 1) + " out of range");
            }
            ++hits[party];
        }
    }
    for (std::size_t party = 0; party < party_count_; ++party) {
        if (hits[party] != 1) {
            throw Error(ErrorCode::InvalidPartition, "party " + std::to_string(party + 1) + " covered " +
                                                         std::to_string(hits[party]) + " times");
        }
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

Partition Partition::singletons(std::size_t party_count) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < party_count; ++i) blocks.push_back({i});
    return Partition(party_count, std::move(blocks));
}

Partition Partition::whole(std::size_t party_count) {
    std::vector<std::size_t> all(party_count);
    for (std::size_t i = 0; i < party_count; ++i) all[i] = i;
    return Partition(party_count, {all});
}

Partition Partition::contiguous(const std::vector<std::size_t>& sizes) {
    std::vector<std::vector<std::size_t>> blocks;
    std::size_t next = 0;
    for (auto s : sizes) {
        std::vector<std::size_t> block;
        for (std::size_t i = 0; i < s; ++i) block.push_back(next++);
        blocks.push_back(std::move(block));
    }
    return Partition(next, std::move(blocks));
}

std::vector<std::size_t> Partition::signature() const {
    std::vector<std::size_t> sizes;
    for (const auto& block : blocks_) sizes.push_back(block.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

bool Partition::refines(const Partition& coarser) const {
    if (coarser.party_count_ != party_count_) return false;
    std::vector<std::size_t> owner(party_count_);
    for (std::size_t b = 0; b < coarser.blocks_.size(); ++b) {
        for (auto party : coarser.blocks_[b]) owner[party] = b;
    }
    return std::all_of(blocks_.begin(), blocks_.end(), [&](const auto& block) {
        return std::all_of(block.begin(), block.end(),
                           [&](std::size_t party) { return owner[party] == owner[block.front()]; });
    });
}

std::string Partition::label() const {
    std::string out;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b) out += '|';
        out += '{';
        for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
            if (i) out += ',';
            out += std::to_string(blocks_[b][i] + 1);
        }
        out += '}';
    }
    return out;
}

std::string signature_label(const std::vector<std::size_t>& signature) {
    std::string out;
    for (std::size_t i = 0; i < signature.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(signature[i]);
    }
    return out;
}

std::vector<Partition> enumerate_partitions(std::size_t party_count, std::optional<std::size_t> block_count) {
    if (party_count == 0) throw Error(ErrorCode::InvalidParams, "party count must be >= 1");
    if (party_count > max_enumerated_parties) {
        throw Error(ErrorCode::TooManyParties, std::to_string(party_count) + " parties exceeds the limit of " +
                                                   std::to_string(max_enumerated_parties));
    }

    // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
    std::vector<std::size_t> a(party_count, 0);
    std::vector<std::size_t> prefix_max(party_count, 0);
    std::vector<Partition> out;
    while (true) {
        const std::size_t blocks = prefix_max.back() + 1;
        if (!block_count || *block_count == blocks) {
            std::vector<std::vector<std::size_t>> groups(blocks);
            for (std::size_t i = 0; i < party_count; ++i) groups[a[i]].push_back(i);
            out.emplace_back(party_count, std::move(groups));
        }
        std::size_t i = party_count;
        while (i-- > 1) {
            if (a[i] <= prefix_max[i - 1]) break;
        }
        if (i == 0) break;
        ++a[i];
        prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
        for (std::size_t j = i + 1; j < party_count; ++j) {
            a[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    return out;
}

} // namespace gme
