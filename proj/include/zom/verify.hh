#pragma once

#include <zom/construction.hh>
#include <zom/containment.hh>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zom
{
    enum class VerifyMode
    {
        exhaustive,
        sampled
    };

    auto mode_name(VerifyMode mode) -> std::string_view;

    struct VerifyOptions
    {
        VerifyMode mode = VerifyMode::exhaustive;

        /// Sampled mode keeps drawing anchors until at least this many
        /// configurations have been examined.
        std::uint64_t samples = 1'000'000;
        std::uint64_t seed = 20240601;

        /// Exhaustive mode refuses configuration spaces (or search trees)
        /// larger than this many primitive checks with ScaleError.
        std::uint64_t exhaustive_budget = 1'000'000'000;

        unsigned threads = 1;

        /// Witnesses kept in a report; violations beyond this are counted
        /// but not stored.
        std::size_t max_witnesses = 100;
    };

    struct VerificationReport
    {
        std::string property;
        VerifyMode mode = VerifyMode::exhaustive;
        std::uint64_t sample_budget = 0;
        std::uint64_t seed = 0;
        std::uint64_t examined = 0;
        std::uint64_t violation_count = 0;

        /// Each witness lists the 1-based matrix indices involved, in the
        /// order the property names them.
        std::vector<std::vector<std::uint64_t>> violations;

        auto passed() const -> bool { return violation_count == 0; }
    };

    /// A built construction together with the indexes every check needs.
    class Construction
    {
        public:
            explicit Construction(const ConstructionParams & params, std::uint64_t cap = default_construction_cap);

            auto params() const -> const ConstructionParams & { return _params; }
            auto matrix() const -> const SparseMatrix & { return _matrix; }
            auto index() const -> const HostIndex & { return _index; }
            auto arithmetic() const -> const IndexArithmetic & { return _arithmetic; }

        private:
            ConstructionParams _params;
            SparseMatrix _matrix;
            HostIndex _index;
            IndexArithmetic _arithmetic;
    };

    /// Parts 1-5 of the structural properties of the construction.
    auto verify_property(int part, const Construction & construction, const VerifyOptions & options = {})
        -> VerificationReport;

    /// The minor-diagonal reflections of parts 4 and 5.
    auto verify_reflected_property(int part, const Construction & construction, const VerifyOptions & options = {})
        -> VerificationReport;

    /// Occurrences of P_t: if type(a,b) <= type(c,d) then both are 1.
    auto verify_lemma_P(const Construction & construction, const VerifyOptions & options = {}) -> VerificationReport;

    /// Occurrences of Q_t: if type(a,b) >= type(c,d) then both are 1.
    auto verify_lemma_Q(const Construction & construction, const VerifyOptions & options = {}) -> VerificationReport;

    /// The construction avoids X_t; a found embedding is the violation.
    auto verify_avoidance(const Construction & construction, const VerifyOptions & options = {}) -> VerificationReport;

    /// Dispatch on a check id: "1".."5", "r4", "r5", "P", "Q", "avoidance".
    auto verify_check(std::string_view id, const Construction & construction, const VerifyOptions & options = {})
        -> VerificationReport;
}
