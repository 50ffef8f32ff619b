#include "gsq/report.hpp"

#include "json.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace gsq {

namespace {

using Json = nlohmann::ordered_json;

int first_nonpositive_minor(const SymMatrix& m) {
    for (int k = 1; k <= m.dim(); ++k) {
        detail::Grid g(k, std::vector<Scalar>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) g[i][j] = m.at(i, j);
        if (detail::grid_determinant(g).sign() <= 0) return k;
    }
    return 0;
}

const char* kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::NoCriticalPoint: return "NoCriticalPoint";
        case BoundKind::BoundZero: return "BoundZero";
        case BoundKind::Bound: return "Bound";
        case BoundKind::NotApplicable: return "NotApplicable";
    }
    return "NotApplicable";
}

BoundKind kind_from_name(const std::string& s) {
    if (s == "NoCriticalPoint") return BoundKind::NoCriticalPoint;
    if (s == "BoundZero") return BoundKind::BoundZero;
    if (s == "Bound") return BoundKind::Bound;
    if (s == "NotApplicable") return BoundKind::NotApplicable;
    throw std::invalid_argument("unknown critical_bound kind: " + s);
}

const char* verdict_name(SignVerdict v) {
    switch (v) {
        case SignVerdict::Positive: return "Positive";
        case SignVerdict::Negative: return "Negative";
        case SignVerdict::Zero: return "Zero";
        case SignVerdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

SignVerdict verdict_from_name(const std::string& s) {
    if (s == "Positive") return SignVerdict::Positive;
    if (s == "Negative") return SignVerdict::Negative;
    if (s == "Zero") return SignVerdict::Zero;
    if (s == "Undetermined") return SignVerdict::Undetermined;
    throw std::invalid_argument("unknown sign verdict: " + s);
}

Json scalar_to_json(const Scalar& s) {
    if (s.exact()) return Json(s.str());
    return Json(s.as_double());
}

Scalar scalar_from_json(const Json& j) {
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), true);
    if (j.is_number()) return Scalar::from_double(j.get<double>());
    throw std::invalid_argument("scalar fields must be strings or numbers");
}

Json scalars_to_json(const std::vector<Scalar>& v) {
    Json out = Json::array();
    for (const auto& s : v) out.push_back(scalar_to_json(s));
    return out;
}

std::vector<Scalar> scalars_from_json(const Json& j) {
    std::vector<Scalar> out;
    for (const auto& e : j) out.push_back(scalar_from_json(e));
    return out;
}

Json pair_to_json(const std::pair<int, int>& p) {
    return Json::array({p.first + 1, p.second + 1});
}

} // namespace

std::string monomial_name(const CoefficientKey& key) {
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < key.exponents.size(); ++i) {
        if (key.exponents[i] == 0) continue;
        if (!first) out << "*";
        out << "s" << i + 1;
        if (key.exponents[i] > 1) out << "^" << key.exponents[i];
        first = false;
    }
    return first ? "1" : out.str();
}

AnalysisReport analyze(const SymMatrix& input, const std::string& mode,
                       const AnalysisOptions& options) {
    if (mode != "covariance" && mode != "inverse")
        throw std::invalid_argument("mode must be 'covariance' or 'inverse', got '" + mode + "'");
    if (options.series_order < 0)
        throw std::invalid_argument("series order must be nonnegative");

    AnalysisReport rep(input);
    rep.mode = mode;
    rep.alpha = options.alpha;
    rep.exact_mode = options.exact;

    if (!is_positive_definite(input)) {
        throw NotPositiveDefiniteError(
            (mode == "covariance" ? std::string("covariance") : std::string("inverse covariance")) +
            " matrix is not strictly positive definite: leading principal minor of order " +
            std::to_string(first_nonpositive_minor(input)) + " is not positive");
    }
    rep.positive_definite = true;

    const SymMatrix gamma = mode == "covariance" ? input : invert(input);
    const SymMatrix gamma_inv = mode == "covariance" ? invert(input) : input;

    rep.irreducible = is_irreducible(gamma_inv);
    rep.m_matrix = is_m_matrix(gamma_inv).is_m_matrix;
    rep.signature = find_signature(gamma_inv);
    rep.row_sums = row_sums(gamma_inv);
    rep.discordant = discordant_pairs(rep.row_sums);
    rep.bound = critical_bound(gamma_inv, rep.row_sums);

    bool gamma_positive = true;
    for (int i = 0; i < gamma.dim() && gamma_positive; ++i)
        for (int j = 0; j < gamma.dim() && gamma_positive; ++j)
            if (gamma.at(i, j).sign() <= 0) gamma_positive = false;
    rep.certificate = gamma_positive ? non_id_certificate(gamma) : std::nullopt;

    rep.associated_candidate = is_associated_candidate(gamma);

    std::vector<Scalar> ladder;
    if (options.series_order >= 1) {
        ladder = options.ladder.empty() ? default_ladder(gamma_inv) : options.ladder;
        rep.series =
            truncated_id_check(gamma, options.alpha, options.series_order, ladder, options.series_budget);
    }

    if (!rep.irreducible)
        rep.warnings.push_back(
            "the matrix pattern is reducible: the vector splits into independent blocks that can "
            "be analyzed separately");
    if (rep.associated_candidate) {
        if (!rep.m_matrix) {
            rep.warnings.push_back(
                "covariance satisfies the pairwise association bound (each gamma_ij <= "
                "min(gamma_ii, gamma_jj)) yet its inverse is not an M-matrix, so the vector is not "
                "associated: the pairwise bound is necessary, not sufficient");
        } else {
            for (size_t i = 0; i < rep.row_sums.sums.size(); ++i) {
                if (rep.row_sums.sums[i].sign() < 0) {
                    rep.warnings.push_back(
                        "covariance satisfies the pairwise association bound (each gamma_ij <= "
                        "min(gamma_ii, gamma_jj)), but inverse row sum " + std::to_string(i + 1) +
                        " is negative, so the vector is not associated: the pairwise bound is "
                        "necessary, not sufficient");
                    break;
                }
            }
        }
    }
    if (!rep.m_matrix && rep.signature)
        rep.warnings.push_back(
            "the inverse covariance is an M-matrix only after a sign conjugation: the zero-mean "
            "square is infinitely divisible, but the uniform-shift analysis applies to the "
            "conjugated vector, so the critical bound is reported as not applicable");
    if (rep.series && options.alpha.sign() != 0 && options.ladder.empty()) {
        const double a = std::fabs(options.alpha.as_double());
        if (1.0 / (a * a) > ladder.back().as_double())
            rep.warnings.push_back(
                "the shift is small relative to the automatic ladder: shift-driven sign changes "
                "emerge near t ~ 1/alpha^2, beyond the sampled rungs; pass an explicit ladder "
                "with larger values to probe that range");
    }
    return rep;
}

std::string to_json(const AnalysisReport& report, int indent) {
    Json out;
    out["schema_version"] = report.schema_version;

    Json in;
    in["mode"] = report.mode;
    in["n"] = report.input.dim();
    Json entries = Json::array();
    for (int i = 0; i < report.input.dim(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < report.input.dim(); ++j) row.push_back(scalar_to_json(report.input.at(i, j)));
        entries.push_back(row);
    }
    in["entries"] = entries;
    in["alpha"] = scalar_to_json(report.alpha);
    in["exact"] = report.exact_mode;
    out["input"] = in;

    out["positive_definite"] = report.positive_definite;
    out["irreducible"] = report.irreducible;
    if (report.signature)
        out["signature"] = Json(report.signature->signs);
    else
        out["signature"] = nullptr;
    out["m_matrix"] = report.m_matrix;
    out["row_sums"] = scalars_to_json(report.row_sums.sums);
    Json pairs = Json::array();
    for (const auto& p : report.discordant.pairs) pairs.push_back(pair_to_json(p));
    out["discordant_pairs"] = pairs;

    Json cb;
    cb["kind"] = kind_name(report.bound.kind);
    cb["witness"] = report.bound.witness ? pair_to_json(*report.bound.witness) : Json(nullptr);
    cb["radicand"] = report.bound.radicand ? scalar_to_json(*report.bound.radicand) : Json(nullptr);
    cb["value"] = report.bound.value ? Json(*report.bound.value) : Json(nullptr);
    out["critical_bound"] = cb;

    if (report.certificate)
        out["non_id_certificate"] =
            Json::array({report.certificate->i + 1, report.certificate->j + 1, report.certificate->k + 1});
    else
        out["non_id_certificate"] = nullptr;
    out["associated_candidate"] = report.associated_candidate;

    if (report.series) {
        const SeriesCheck& sc = *report.series;
        Json s;
        s["verdict"] = sc.all_nonneg ? "AllNonneg" : "NegativeFound";
        s["first_negative_key"] = sc.first_negative ? Json(sc.first_negative->exponents) : Json(nullptr);
        if (sc.first_negative_detail) {
            const AsymptoticSign& d = *sc.first_negative_detail;
            Json dj;
            dj["sign"] = verdict_name(d.sign);
            dj["leading_power"] = d.leading_power ? Json(*d.leading_power) : Json(nullptr);
            Json samples = Json::array();
            for (const auto& [t, v] : d.samples)
                samples.push_back(Json::array({scalar_to_json(t), scalar_to_json(v)}));
            dj["samples"] = samples;
            s["first_negative_detail"] = dj;
        } else {
            s["first_negative_detail"] = nullptr;
        }
        s["order"] = sc.order;
        s["ladder"] = scalars_to_json(sc.ladder);
        s["keys_checked"] = sc.keys_checked;
        s["undetermined"] = sc.undetermined;
        out["series_check"] = s;
    } else {
        out["series_check"] = nullptr;
    }

    out["warnings"] = Json(report.warnings);
    return out.dump(indent);
}

AnalysisReport report_from_json(const std::string& text) {
    Json j = Json::parse(text);

    const Json& in = j.at("input");
    const int n = in.at("n").get<int>();
    std::vector<Scalar> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    const Json& entries = in.at("entries");
    if (static_cast<int>(entries.size()) != n)
        throw std::invalid_argument("entries row count does not match n");
    for (const auto& row : entries) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("entries column count does not match n");
        for (const auto& e : row) flat.push_back(scalar_from_json(e));
    }
    AnalysisReport rep(SymMatrix(n, std::move(flat)));
    rep.schema_version = j.at("schema_version").get<int>();
    rep.mode = in.at("mode").get<std::string>();
    rep.alpha = scalar_from_json(in.at("alpha"));
    rep.exact_mode = in.at("exact").get<bool>();

    rep.positive_definite = j.at("positive_definite").get<bool>();
    rep.irreducible = j.at("irreducible").get<bool>();
    if (!j.at("signature").is_null()) {
        SignatureVector sig;
        for (const auto& s : j.at("signature")) sig.signs.push_back(s.get<int>());
        rep.signature = sig;
    }
    rep.m_matrix = j.at("m_matrix").get<bool>();
    rep.row_sums.sums = scalars_from_json(j.at("row_sums"));
    for (const auto& p : j.at("discordant_pairs"))
        rep.discordant.pairs.emplace_back(p.at(0).get<int>() - 1, p.at(1).get<int>() - 1);

    const Json& cb = j.at("critical_bound");
    rep.bound.kind = kind_from_name(cb.at("kind").get<std::string>());
    if (!cb.at("witness").is_null())
        rep.bound.witness = std::make_pair(cb.at("witness").at(0).get<int>() - 1,
                                           cb.at("witness").at(1).get<int>() - 1);
    if (!cb.at("radicand").is_null()) rep.bound.radicand = scalar_from_json(cb.at("radicand"));
    if (!cb.at("value").is_null()) rep.bound.value = cb.at("value").get<double>();

    if (!j.at("non_id_certificate").is_null()) {
        const Json& c = j.at("non_id_certificate");
        rep.certificate = NonIdCertificate{c.at(0).get<int>() - 1, c.at(1).get<int>() - 1,
                                           c.at(2).get<int>() - 1};
    }
    rep.associated_candidate = j.at("associated_candidate").get<bool>();

    if (!j.at("series_check").is_null()) {
        const Json& s = j.at("series_check");
        SeriesCheck sc;
        sc.all_nonneg = s.at("verdict").get<std::string>() == "AllNonneg";
        if (!s.at("first_negative_key").is_null()) {
            CoefficientKey key;
            for (const auto& e : s.at("first_negative_key")) key.exponents.push_back(e.get<int>());
            sc.first_negative = key;
        }
        if (!s.at("first_negative_detail").is_null()) {
            const Json& dj = s.at("first_negative_detail");
            AsymptoticSign d;
            d.sign = verdict_from_name(dj.at("sign").get<std::string>());
            if (!dj.at("leading_power").is_null()) d.leading_power = dj.at("leading_power").get<int>();
            for (const auto& sm : dj.at("samples"))
                d.samples.emplace_back(scalar_from_json(sm.at(0)), scalar_from_json(sm.at(1)));
            sc.first_negative_detail = d;
        }
        sc.order = s.at("order").get<int>();
        sc.ladder = scalars_from_json(s.at("ladder"));
        sc.keys_checked = s.at("keys_checked").get<size_t>();
        sc.undetermined = s.at("undetermined").get<size_t>();
        rep.series = sc;
    }

    for (const auto& w : j.at("warnings")) rep.warnings.push_back(w.get<std::string>());
    return rep;
}

std::string to_text(const AnalysisReport& report) {
    std::ostringstream out;
    out << std::setprecision(10);
    const int n = report.input.dim();
    out << "analysis report (schema " << report.schema_version << ")\n";
    out << "input: " << n << "x" << n << " " << report.mode << " matrix, alpha = "
        << report.alpha.str() << ", " << (report.exact_mode ? "exact" : "floating-point")
        << " arithmetic\n";

    std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
    size_t width = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cells[i][j] = report.input.at(i, j).str();
            width = std::max(width, cells[i][j].size());
        }
    for (int i = 0; i < n; ++i) {
        out << "  [";
        for (int j = 0; j < n; ++j) out << " " << std::setw(static_cast<int>(width)) << cells[i][j];
        out << " ]\n";
    }

    out << "positive_definite: " << (report.positive_definite ? "true" : "false") << "\n";
    out << "irreducible: " << (report.irreducible ? "true" : "false") << "\n";
    out << "m_matrix: " << (report.m_matrix ? "true" : "false") << "\n";
    out << "signature: ";
    if (report.signature) {
        for (int s : report.signature->signs) out << (s > 0 ? "+1 " : "-1 ");
        out << "(conjugation makes the inverse an M-matrix)\n";
    } else {
        out << "none (the zero-mean square is not infinitely divisible)\n";
    }
    out << "row_sums:";
    for (const auto& s : report.row_sums.sums) out << " " << s.str();
    out << "\n";
    out << "discordant_pairs:";
    if (report.discordant.pairs.empty()) out << " none";
    for (const auto& [i, jj] : report.discordant.pairs) out << " (" << i + 1 << "," << jj + 1 << ")";
    out << "\n";

    out << "critical_bound: " << kind_name(report.bound.kind);
    if (report.bound.witness)
        out << " at pair (" << report.bound.witness->first + 1 << ","
            << report.bound.witness->second + 1 << ")";
    if (report.bound.radicand) out << ", radicand " << report.bound.radicand->str();
    if (report.bound.value) out << ", value " << *report.bound.value;
    out << "\n";

    out << "non_id_certificate: ";
    if (report.certificate)
        out << "(" << report.certificate->i + 1 << "," << report.certificate->j + 1 << ","
            << report.certificate->k + 1 << ")\n";
    else
        out << "none\n";
    out << "associated_candidate: " << (report.associated_candidate ? "true" : "false") << "\n";

    if (report.series) {
        const SeriesCheck& sc = *report.series;
        out << "series_check: " << (sc.all_nonneg ? "AllNonneg" : "NegativeFound");
        if (sc.first_negative) out << " at " << monomial_name(*sc.first_negative);
        out << " (order " << sc.order << ", " << sc.keys_checked << " keys, " << sc.undetermined
            << " undetermined)\n";
        out << "  ladder:";
        for (const auto& t : sc.ladder) out << " " << t.str();
        out << "\n";
        if (sc.first_negative_detail) {
            out << "  first negative samples:";
            for (const auto& [t, v] : sc.first_negative_detail->samples)
                out << " (" << t.as_double() << ", " << v.as_double() << ")";
            out << "\n";
            if (sc.first_negative_detail->leading_power)
                out << "  leading decay power: " << *sc.first_negative_detail->leading_power << "\n";
        }
    } else {
        out << "series_check: skipped\n";
    }

    if (!report.warnings.empty()) {
        out << "warnings:\n";
        for (const auto& w : report.warnings) out << "  - " << w << "\n";
    }
    return out.str();
}

} // namespace gsq
