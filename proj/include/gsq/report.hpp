#pragma once

#include "gsq/divisibility.hpp"
#include "gsq/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gsq {

struct AnalysisOptions {
    Scalar alpha = Scalar(0);
    int series_order = 0;       // 0 = skip the coefficient-sign scan
    std::vector<Scalar> ladder; // empty = automatic ladder
    long long series_budget = kSeriesBudget;
    bool exact = false;         // echoed into the report
};

// Everything the pipeline established about one input matrix. Indices
// are 0-based in memory and 1-based in serialized form.
struct AnalysisReport {
    explicit AnalysisReport(SymMatrix in) : input(std::move(in)) {}

    int schema_version = 1;
    std::string mode; // "covariance" | "inverse"
    SymMatrix input;  // the matrix exactly as parsed
    Scalar alpha;
    bool exact_mode = false;

    bool positive_definite = false;
    bool irreducible = false;
    // Signature making the conjugated inverse an M-matrix; absent when
    // none exists (the zero-mean square is then not infinitely
    // divisible).
    std::optional<SignatureVector> signature;
    bool m_matrix = false;
    RowSums row_sums; // of the inverse covariance
    DiscordantPairs discordant;
    CriticalBound bound;
    std::optional<NonIdCertificate> certificate;
    bool associated_candidate = false;
    std::optional<SeriesCheck> series;
    std::vector<std::string> warnings;
};

// Full pipeline over one matrix; `mode` says whether it is the
// covariance or its inverse. Throws NotPositiveDefiniteError (naming
// the first failing principal minor), SingularMatrixError for a
// singular inverse-mode input, std::invalid_argument for a bad mode,
// and the budget errors from the series module.
AnalysisReport analyze(const SymMatrix& input, const std::string& mode,
                       const AnalysisOptions& options);

// Stable field names; exact scalars ride as "p/q" strings, inexact ones
// as numbers. report_from_json round-trips to_json exactly.
std::string to_json(const AnalysisReport& report, int indent = 2);
AnalysisReport report_from_json(const std::string& text);

std::string to_text(const AnalysisReport& report);

// "s1*s3^2" for exponents (1,0,2); used by both renderers and tests.
std::string monomial_name(const CoefficientKey& key);

} // namespace gsq
