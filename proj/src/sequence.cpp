#include "equidist/sequence.hpp"

#include <algorithm>
#include <stdexcept>

#include "equidist/errors.hpp"
#include "equidist/rng.hpp"

namespace equidist {

namespace {

void require_generation_args(std::uint64_t n, std::uint32_t p) {
    if (n == 0) throw ConfigError("sequence length must be positive");
    if (p < 1 || p > kMaxPrecision)
        throw ConfigError("precision must lie in [1, " + std::to_string(kMaxPrecision) + "]");
}

// Round x = num/2^128 (an exact 128-bit binary fraction) half-up to the
// nearest multiple of 1/2^p. The result may equal 2^p, i.e. the point 1.
std::uint64_t round_frac128_to_grid(uint128 frac, std::uint32_t p) {
    // k = floor(frac / 2^(128-p) + 1/2) = floor((frac + 2^(127-p)) / 2^(128-p)).
    const unsigned shift = 128 - p;
    const uint128 half = uint128(1) << (shift - 1);
    const uint128 sum = frac + half; // may wrap: handle carry explicitly
    std::uint64_t k = static_cast<std::uint64_t>(sum >> shift);
    if (sum < frac) k += std::uint64_t(1) << p; // carry out of bit 127
    return k;
}

} // namespace

std::string SequenceDescriptor::kind() const {
    struct Visitor {
        std::string operator()(const KroneckerParams&) const { return "kronecker"; }
        std::string operator()(const VanDerCorputParams&) const { return "van_der_corput"; }
        std::string operator()(const IidUniformParams&) const { return "iid_uniform"; }
        std::string operator()(const SampledParams&) const { return "sampled"; }
        std::string operator()(const LiftParams&) const { return "lift"; }
        std::string operator()(const SpoilerParams&) const { return "spoiler"; }
    };
    return std::visit(Visitor{}, params);
}

bool SequenceDescriptor::tagged_kind() const {
    return std::holds_alternative<SampledParams>(params) ||
           std::holds_alternative<LiftParams>(params) ||
           std::holds_alternative<SpoilerParams>(params);
}

Sequence::Sequence(SequenceDescriptor desc, std::vector<std::uint64_t> numerators)
    : desc_(std::move(desc)), numerators_(std::move(numerators)) {
    if (numerators_.size() != desc_.length)
        throw std::logic_error("sequence length does not match its descriptor");
    const std::uint64_t limit = std::uint64_t(1) << desc_.precision;
    for (std::uint64_t k : numerators_)
        if (k > limit) throw std::logic_error("sequence element exceeds its grid");
}

std::string provenance_name(Provenance p) {
    switch (p) {
    case Provenance::Lift: return "lift";
    case Provenance::Spoiler: return "spoiler";
    case Provenance::Sampled: return "sampled";
    }
    throw std::logic_error("unknown provenance");
}

Provenance provenance_from_name(const std::string& name) {
    if (name == "lift") return Provenance::Lift;
    if (name == "spoiler") return Provenance::Spoiler;
    if (name == "sampled") return Provenance::Sampled;
    throw ConfigError("unknown provenance: " + name);
}

TaggedSequence::TaggedSequence(Sequence base, std::vector<TagIndex> tags,
                               PartitionConfig partition, Provenance provenance)
    : base_(std::move(base)), tags_(std::move(tags)), partition_(partition),
      provenance_(provenance) {
    if (tags_.size() != base_.size())
        throw std::logic_error("tag list length does not match the sequence");
    if (base_.precision() != partition_.precision)
        throw std::logic_error("tagged sequence precision does not match its partition");
    for (std::size_t i = 0; i < tags_.size(); ++i) {
        if (tags_[i] >= partition_.tag_count)
            throw std::logic_error("tag out of range");
        if (tag_of(base_.at(i), partition_) != tags_[i])
            throw std::logic_error("element does not lie in its tagged class");
    }
}

Sequence kronecker(const Alpha& alpha, std::uint64_t n, std::uint32_t p) {
    require_generation_args(n, p);
    std::vector<std::uint64_t> ks(n);
    for (std::uint64_t i = 0; i < n; ++i)
        ks[i] = round_frac128_to_grid(alpha_times_mod1(alpha, i + 1), p);
    return Sequence({KroneckerParams{alpha}, n, p}, std::move(ks));
}

Sequence van_der_corput(std::uint64_t base, std::uint64_t n, std::uint32_t p) {
    require_generation_args(n, p);
    if (base < 2) throw ConfigError("van der Corput base must be at least 2");
    std::vector<std::uint64_t> ks(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        // Exact radical inverse of m = i+1 as num/den with den = base^digits.
        std::uint64_t m = i + 1;
        uint128 num = 0;
        uint128 den = 1;
        while (m > 0) {
            num = num * base + (m % base);
            den *= base;
            m /= base;
        }
        // Round num/den half-up to the grid: k = floor((num/den)*2^p + 1/2).
        ks[i] = static_cast<std::uint64_t>((2 * num * (uint128(1) << p) + den) / (2 * den));
    }
    return Sequence({VanDerCorputParams{base}, n, p}, std::move(ks));
}

Sequence iid_uniform(std::uint64_t seed, std::uint64_t n, std::uint32_t p) {
    require_generation_args(n, p);
    std::vector<std::uint64_t> ks(n);
    for (std::uint64_t i = 0; i < n; ++i)
        ks[i] = splitmix64_at(seed, i) >> (64 - p);
    return Sequence({IidUniformParams{seed}, n, p}, std::move(ks));
}

TaggedSequence sample_tagged(std::uint64_t seed, TagIndex t, std::uint64_t n,
                             const PartitionConfig& cfg) {
    require_generation_args(n, cfg.precision);
    require_valid_tag(t, cfg);
    // Interior numerators of class t are k = j*m + t with k in (0, 2^p);
    // j ranges over [lo_j, hi_j] where hi_j = (2^p - 1 - t) / m.
    const std::uint64_t grid = std::uint64_t(1) << cfg.precision;
    const std::uint64_t hi_j = (grid - 1 - t) / cfg.tag_count;
    const std::uint64_t lo_j = (t == 0) ? 1 : 0; // k = 0 is not an interior point
    if (hi_j < lo_j) throw ConfigError("partition class is empty at this precision");
    const std::uint64_t span = hi_j - lo_j + 1;
    std::vector<std::uint64_t> ks(n);
    std::vector<TagIndex> tags(n, t);
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t j = lo_j + uniform_below(splitmix64_at(seed, i), span);
        ks[i] = j * cfg.tag_count + t;
    }
    Sequence base({SampledParams{seed, t, cfg}, n, cfg.precision}, std::move(ks));
    return TaggedSequence(std::move(base), std::move(tags), cfg, Provenance::Sampled);
}

namespace {

// Largest numerator of class t strictly inside (x_n - 1/n, x_n), at the
// partition's precision q. All arithmetic is exact: with K the numerator of
// x_n at precision q, the window is the open integer range
// (K - 2^q/n, K), i.e. admissible k satisfy K - w < k < K with w = ceil(2^q/n).
std::uint64_t lifted_numerator(const UnitPoint& x, std::uint64_t n, TagIndex t,
                               const PartitionConfig& cfg, std::uint64_t index) {
    const std::uint32_t q = cfg.precision;
    if (x.precision > q)
        throw ConfigError("partition precision must be at least the sequence precision");
    const std::uint64_t big_k = x.numerator_at(q);
    const std::uint64_t pow_q = std::uint64_t(1) << q;
    const std::uint64_t w = (pow_q + n - 1) / n; // ceil(2^q / n)
    const std::uint64_t lo_exclusive = big_k > w ? big_k - w : 0;
    const auto k = largest_tagged_in(lo_exclusive, big_k, t, cfg);
    if (!k)
        throw ResolutionExhausted("no point of the target class inside the window for term " +
                                      std::to_string(index) +
                                      "; raise the partition precision",
                                  index);
    return *k;
}

} // namespace

TaggedSequence lift_to_tag(const Sequence& x, TagIndex t, const PartitionConfig& cfg) {
    require_valid_tag(t, cfg);
    const std::uint64_t n = x.size();
    std::vector<std::uint64_t> ks(n);
    std::vector<TagIndex> tags(n, t);
    for (std::uint64_t i = 0; i < n; ++i)
        ks[i] = lifted_numerator(x.at(i), i + 1, t, cfg, i + 1);
    auto base_desc = std::make_shared<const SequenceDescriptor>(x.descriptor());
    Sequence lifted({LiftParams{t, cfg, std::move(base_desc)}, n, cfg.precision}, std::move(ks));
    return TaggedSequence(std::move(lifted), std::move(tags), cfg, Provenance::Lift);
}

TaggedSequence diagonal_spoiler(const Sequence& x, const PartitionConfig& cfg) {
    const std::uint64_t n = x.size();
    if (cfg.tag_count < n)
        throw ConfigError("diagonal construction needs at least as many classes as terms");
    std::vector<std::uint64_t> ks(n);
    std::vector<TagIndex> tags(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        tags[i] = i; // term n goes to class n-1: all tags pairwise distinct
        ks[i] = lifted_numerator(x.at(i), i + 1, tags[i], cfg, i + 1);
    }
    auto base_desc = std::make_shared<const SequenceDescriptor>(x.descriptor());
    Sequence moved({SpoilerParams{cfg, std::move(base_desc)}, n, cfg.precision}, std::move(ks));
    return TaggedSequence(std::move(moved), std::move(tags), cfg, Provenance::Spoiler);
}

std::set<TagIndex> witness_tags(const TaggedSequence& y) {
    return std::set<TagIndex>(y.tags().begin(), y.tags().end());
}

Sequence materialize(const SequenceDescriptor& desc) {
    struct Visitor {
        const SequenceDescriptor& desc;
        Sequence operator()(const KroneckerParams& p) const {
            return kronecker(p.alpha, desc.length, desc.precision);
        }
        Sequence operator()(const VanDerCorputParams& p) const {
            return van_der_corput(p.base, desc.length, desc.precision);
        }
        Sequence operator()(const IidUniformParams& p) const {
            return iid_uniform(p.seed, desc.length, desc.precision);
        }
        Sequence operator()(const SampledParams&) const { return tagged(); }
        Sequence operator()(const LiftParams&) const { return tagged(); }
        Sequence operator()(const SpoilerParams&) const { return tagged(); }
        Sequence tagged() const { return materialize_tagged(desc).base(); }
    };
    return std::visit(Visitor{desc}, desc.params);
}

TaggedSequence materialize_tagged(const SequenceDescriptor& desc) {
    struct Visitor {
        const SequenceDescriptor& desc;
        TaggedSequence operator()(const SampledParams& p) const {
            return sample_tagged(p.seed, p.tag, desc.length, p.partition);
        }
        TaggedSequence operator()(const LiftParams& p) const {
            if (!p.base) throw ConfigError("lift descriptor is missing its base sequence");
            SequenceDescriptor base = *p.base;
            base.length = desc.length;
            return lift_to_tag(materialize(base), p.tag, p.partition);
        }
        TaggedSequence operator()(const SpoilerParams& p) const {
            if (!p.base) throw ConfigError("spoiler descriptor is missing its base sequence");
            SequenceDescriptor base = *p.base;
            base.length = desc.length;
            return diagonal_spoiler(materialize(base), p.partition);
        }
        TaggedSequence operator()(const KroneckerParams&) const { return untagged(); }
        TaggedSequence operator()(const VanDerCorputParams&) const { return untagged(); }
        TaggedSequence operator()(const IidUniformParams&) const { return untagged(); }
        [[noreturn]] TaggedSequence untagged() const {
            throw ConfigError("descriptor kind '" + desc.kind() + "' carries no tags");
        }
    };
    return std::visit(Visitor{desc}, desc.params);
}

} // namespace equidist
