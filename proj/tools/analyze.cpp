#include "gsq/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

gsq::Scalar scalar_from_json_entry(const Json& j, bool exact, int i, int jj) {
    const std::string where = "entry (" + std::to_string(i + 1) + "," + std::to_string(jj + 1) + ")";
    try {
        if (j.is_string()) return gsq::Scalar::parse(j.get<std::string>(), exact);
        if (j.is_number_integer()) {
            const long long v = j.get<long long>();
            return exact ? gsq::Scalar(v) : gsq::Scalar::from_double(static_cast<double>(v));
        }
        if (j.is_number()) {
            const double v = j.get<double>();
            return exact ? gsq::Scalar::exact_from_double(v) : gsq::Scalar::from_double(v);
        }
    } catch (const std::exception& e) {
        throw std::invalid_argument(where + ": " + e.what());
    }
    throw std::invalid_argument(where + " must be a number or a rational string");
}

struct ParsedInput {
    gsq::SymMatrix matrix;
    std::string mode;
};

ParsedInput read_json_input(const std::string& text, const std::string& mode_flag, bool exact) {
    Json j = Json::parse(text);
    const std::string mode = j.at("mode").get<std::string>();
    if (!mode_flag.empty() && mode_flag != mode)
        throw std::invalid_argument("--mode '" + mode_flag + "' conflicts with input file mode '" +
                                    mode + "'");
    const int n = j.at("n").get<int>();
    const Json& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != n)
        throw std::invalid_argument("entries has " + std::to_string(entries.size()) +
                                    " rows, expected " + std::to_string(n));
    std::vector<gsq::Scalar> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const Json& row = entries.at(i);
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("row " + std::to_string(i + 1) + " has " +
                                        std::to_string(row.size()) + " entries, expected " +
                                        std::to_string(n));
        for (int jj = 0; jj < n; ++jj) flat.push_back(scalar_from_json_entry(row.at(jj), exact, i, jj));
    }
    return ParsedInput{gsq::SymMatrix(n, std::move(flat)), mode};
}

ParsedInput read_text_input(const std::string& text, const std::string& mode_flag, bool exact) {
    std::istringstream in(text);
    std::vector<gsq::Scalar> flat;
    std::string tok;
    while (in >> tok) {
        try {
            flat.push_back(gsq::Scalar::parse(tok, exact));
        } catch (const std::exception& e) {
            throw std::invalid_argument("token " + std::to_string(flat.size() + 1) + " ('" + tok +
                                        "'): " + e.what());
        }
    }
    const auto count = flat.size();
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count))));
    if (count == 0 || static_cast<size_t>(n) * n != count)
        throw std::invalid_argument("plain-text input must hold n*n entries; got " +
                                    std::to_string(count) + " values");
    return ParsedInput{gsq::SymMatrix(n, std::move(flat)),
                       mode_flag.empty() ? std::string("covariance") : mode_flag};
}

std::vector<gsq::Scalar> parse_ladder(const std::string& text, bool exact) {
    std::vector<gsq::Scalar> out;
    std::istringstream in(text);
    std::string piece;
    while (std::getline(in, piece, ',')) {
        if (piece.empty()) continue;
        out.push_back(gsq::Scalar::parse(piece, exact));
    }
    if (out.size() < 3) throw std::invalid_argument("--ladder needs at least 3 comma-separated values");
    return out;
}

int emit_error(const std::string& message, bool json_out, int code) {
    if (json_out) {
        Json j;
        j["schema_version"] = 1;
        j["error"] = message;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "error: " << message << "\n";
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analyzes whether the square of a uniformly shifted Gaussian vector stays "
                 "infinitely divisible"};
    std::string input_path, mode_flag, alpha_text = "0", ladder_text;
    int series_order = 0;
    bool exact = false, json_out = false, text_out = false;

    app.add_option("--input", input_path, "matrix file: JSON {mode,n,entries} or whitespace-delimited values")
        ->required();
    app.add_option("--mode", mode_flag, "how to read the matrix: covariance|inverse (plain-text input)")
        ->check(CLI::IsMember({"covariance", "inverse"}));
    app.add_option("--alpha", alpha_text, "shift added to every coordinate (default 0)");
    app.add_option("--series-order", series_order,
                   "truncation order for the coefficient-sign scan (default 0 = skip)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--ladder", ladder_text, "comma-separated increasing t values for the scan");
    app.add_flag("--exact", exact, "exact rational arithmetic throughout");
    auto* jflag = app.add_flag("--json", json_out, "emit the report as JSON");
    auto* tflag = app.add_flag("--text", text_out, "emit the report as plain text (default)");
    jflag->excludes(tflag);
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream file(input_path);
        if (!file) return emit_error("cannot open input file '" + input_path + "'", json_out, 2);
        std::ostringstream buffer;
        buffer << file.rdbuf();
        const std::string content = buffer.str();

        const size_t first = content.find_first_not_of(" \t\r\n");
        const bool looks_json = first != std::string::npos && content[first] == '{';
        ParsedInput parsed = looks_json ? read_json_input(content, mode_flag, exact)
                                        : read_text_input(content, mode_flag, exact);

        gsq::AnalysisOptions options;
        options.alpha = gsq::Scalar::parse(alpha_text, exact);
        options.series_order = series_order;
        options.exact = exact;
        if (!ladder_text.empty()) options.ladder = parse_ladder(ladder_text, exact);

        gsq::AnalysisReport report = gsq::analyze(parsed.matrix, parsed.mode, options);
        std::cout << (json_out ? gsq::to_json(report) : gsq::to_text(report)) << "\n";
        return 0;
    } catch (const gsq::OrderTooLargeError& e) {
        return emit_error(e.what(), json_out, 1);
    } catch (const gsq::BudgetExceededError& e) {
        return emit_error(e.what(), json_out, 1);
    } catch (const gsq::NotPositiveDefiniteError& e) {
        return emit_error(e.what(), json_out, 2);
    } catch (const gsq::SingularMatrixError& e) {
        return emit_error(e.what(), json_out, 2);
    } catch (const Json::exception& e) {
        return emit_error(std::string("input is not valid JSON: ") + e.what(), json_out, 2);
    } catch (const std::invalid_argument& e) {
        return emit_error(e.what(), json_out, 2);
    } catch (const std::exception& e) {
        return emit_error(e.what(), json_out, 2);
    }
}
