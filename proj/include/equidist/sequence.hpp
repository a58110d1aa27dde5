#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "equidist/alpha.hpp"
#include "equidist/partition.hpp"
#include "equidist/unit_point.hpp"

namespace equidist {

struct SequenceDescriptor;

struct KroneckerParams {
    Alpha alpha;
};
struct VanDerCorputParams {
    std::uint64_t base = 2;
};
struct IidUniformParams {
    std::uint64_t seed = 0;
};
struct SampledParams {
    std::uint64_t seed = 0;
    TagIndex tag = 0;
    PartitionConfig partition;
};
struct LiftParams {
    TagIndex tag = 0;
    PartitionConfig partition;
    std::shared_ptr<const SequenceDescriptor> base;
};
struct SpoilerParams {
    PartitionConfig partition;
    std::shared_ptr<const SequenceDescriptor> base;
};

/// Everything needed to regenerate a prefix bit-for-bit.
struct SequenceDescriptor {
    std::variant<KroneckerParams, VanDerCorputParams, IidUniformParams, SampledParams,
                 LiftParams, SpoilerParams>
        params;
    std::uint64_t length = 0;    // N
    std::uint32_t precision = 1; // p

    std::string kind() const;
    bool tagged_kind() const;
};

/// A materialized prefix of grid points together with its descriptor.
class Sequence {
  public:
    Sequence(SequenceDescriptor desc, std::vector<std::uint64_t> numerators);

    const SequenceDescriptor& descriptor() const { return desc_; }
    std::size_t size() const { return numerators_.size(); }
    std::uint32_t precision() const { return desc_.precision; }
    const std::vector<std::uint64_t>& numerators() const { return numerators_; }

    // 0-based access; element i is term n = i+1 of the sequence.
    UnitPoint at(std::size_t i) const { return UnitPoint(numerators_[i], desc_.precision); }

  private:
    SequenceDescriptor desc_;
    std::vector<std::uint64_t> numerators_;
};

enum class Provenance { Lift, Spoiler, Sampled };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& name);

/// A sequence whose every element carries the tag of the partition class it
/// lies in. Lift and sampled provenances use one tag throughout; the spoiler
/// assigns pairwise-distinct tags.
class TaggedSequence {
  public:
    TaggedSequence(Sequence base, std::vector<TagIndex> tags, PartitionConfig partition,
                   Provenance provenance);

    const Sequence& base() const { return base_; }
    const std::vector<TagIndex>& tags() const { return tags_; }
    const PartitionConfig& partition() const { return partition_; }
    Provenance provenance() const { return provenance_; }

    std::size_t size() const { return base_.size(); }
    UnitPoint at(std::size_t i) const { return base_.at(i); }
    TagIndex tag_at(std::size_t i) const { return tags_[i]; }

  private:
    Sequence base_;
    std::vector<TagIndex> tags_;
    PartitionConfig partition_;
    Provenance provenance_;
};

/// Element n is {alpha*n} rounded half-up to the grid at precision p, n = 1..N.
Sequence kronecker(const Alpha& alpha, std::uint64_t n, std::uint32_t p);

/// Element n is the radical inverse of n in the given base, rounded half-up
/// to the grid at precision p, n = 1..N.
Sequence van_der_corput(std::uint64_t base, std::uint64_t n, std::uint32_t p);

/// N splitmix64 draws, uniform over the grid points {k/2^p : 0 <= k < 2^p}.
Sequence iid_uniform(std::uint64_t seed, std::uint64_t n, std::uint32_t p);

/// N i.i.d. points uniform over the interior grid points of class C_t.
TaggedSequence sample_tagged(std::uint64_t seed, TagIndex t, std::uint64_t n,
                             const PartitionConfig& cfg);

/// The lift construction: each x_n is replaced by the largest grid point of
/// C_t inside the window (x_n - 1/n, x_n) intersected with (0, x_n), so
/// y_n is in C_t, 0 < y_n < x_n, and |x_n - y_n| < 1/n exactly.
/// Throws ResolutionExhausted (with the failing index) when a window holds
/// no point of C_t; raising cfg.precision widens every window.
TaggedSequence lift_to_tag(const Sequence& x, TagIndex t, const PartitionConfig& cfg);

/// The diagonal construction: term n is re-placed like the lift but into
/// class C_{n-1}, so the tags are pairwise distinct and every class holds at
/// most one term. Requires cfg.tag_count >= x.size().
TaggedSequence diagonal_spoiler(const Sequence& x, const PartitionConfig& cfg);

/// The set of tags the sequence actually touches; the tagged count in any
/// other class is identically zero.
std::set<TagIndex> witness_tags(const TaggedSequence& y);

/// Regenerate from a descriptor (any kind; tagged kinds return the base values).
Sequence materialize(const SequenceDescriptor& desc);

/// Regenerate a tagged sequence from a lift/spoiler/sampled descriptor.
TaggedSequence materialize_tagged(const SequenceDescriptor& desc);

} // namespace equidist
