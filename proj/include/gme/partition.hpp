#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gme {

/// Grouping of parties {0..m-1} into disjoint non-empty blocks.
///
/// Always held in canonical form: members ascending inside each block and
/// blocks ordered by their smallest member. Blocks need not be contiguous.
class Partition {
public:
    /// Throws InvalidPartition unless the blocks cover {0..party_count-1}
    /// exactly once.
    Partition(std::size_t party_count, std::vector<std::vector<std::size_t>> blocks);

    /// Every party in its own block.
    static Partition singletons(std::size_t party_count);
    /// All parties in one block.
    static Partition whole(std::size_t party_count);
    /// Contiguous blocks of the given sizes, in order: sizes {1,4} -> {0}|{1,2,3,4}.
    static Partition contiguous(const std::vector<std::size_t>& sizes);

    std::size_t party_count() const noexcept { return party_count_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }

    /// Block sizes sorted ascending, e.g. {1,2,2}.
    std::vector<std::size_t> signature() const;

    /// True if every block of *this lies inside some block of `coarser`.
    bool refines(const Partition& coarser) const;

    /// 1-based display form, e.g. "{1,2}|{3}".
    std::string label() const;

    bool operator==(const Partition&) const = default;

private:
    std::size_t party_count_;
    std::vector<std::vector<std::size_t>> blocks_;
};

/// Formats a block-size signature as "1,2,2".
std::string signature_label(const std::vector<std::size_t>& signature);

/// Largest party count accepted by enumerate_partitions (B_12 = 4213597).
inline constexpr std::size_t max_enumerated_parties = 12;

/// All set partitions of {0..m-1} in lexicographic order of their restricted
/// growth strings. When `block_count` is given only partitions with exactly
/// that many blocks are returned. Throws TooManyParties for m > 12 and
/// InvalidParams for m == 0.
std::vector<Partition> enumerate_partitions(std::size_t party_count,
                                            std::optional<std::size_t> block_count = std::nullopt);

} // namespace gme
