#include "emo/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <map>

namespace emo {

namespace {

using nlohmann::json;

json real_or_null(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

Algorithm parse_variant(const std::string& s)
{
    if (s == "nsga2") {
        return Algorithm::nsga2;
    }
    if (s == "sms_emoa") {
        return Algorithm::sms_emoa;
    }
    throw SpecError("unknown variant '" + s + "' (nsga2 | sms_emoa)");
}

} // namespace

const ScenarioSummary& Summary::at(const std::string& name) const
{
    for (const auto& s : scenarios) {
        if (s.name == name) {
            return s;
        }
    }
    throw std::out_of_range("no scenario named '" + name + "' in summary");
}

Summary summarize(std::span<const ResultRow> rows, const std::string& baseline)
{
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> values;
    std::map<std::string, std::size_t> successes;
    for (const auto& r : rows) {
        auto [it, fresh] = values.try_emplace(r.scenario);
        if (fresh) {
            order.push_back(r.scenario);
        }
        it->second.push_back(r.indicator);
        successes[r.scenario] += r.success ? 1 : 0;
    }

    Summary out;
    out.baseline = baseline.empty() ? (order.empty() ? std::string() : order.back()) : baseline;
    if (!out.baseline.empty() && !values.count(out.baseline)) {
        throw ContractViolation("baseline '" + out.baseline + "' has no rows");
    }
    for (const auto& name : order) {
        const auto& v = values.at(name);
        ScenarioSummary s;
        s.name = name;
        s.replications = v.size();
        s.successes = successes.at(name);
        double sum = 0.0;
        for (double x : v) {
            sum += x;
        }
        s.mean = sum / static_cast<double>(v.size());
        if (v.size() > 1) {
            double sq = 0.0;
            for (double x : v) {
                sq += (x - s.mean) * (x - s.mean);
            }
            s.std = std::sqrt(sq / static_cast<double>(v.size() - 1));
        } else {
            s.warnings.push_back("single replication: std reported as 0");
        }
        if (s.successes < s.replications) {
            s.warnings.push_back(std::to_string(s.replications - s.successes) + " unsuccessful runs");
        }
        if (name != out.baseline) {
            s.test = wilcoxon_rank_sum(v, values.at(out.baseline));
            s.significant = s.test->p_value < out.alpha;
        }
        out.scenarios.push_back(std::move(s));
    }
    return out;
}

std::string summary_to_json(const Summary& summary)
{
    json doc;
    doc["baseline"] = summary.baseline;
    doc["alpha"] = summary.alpha;
    doc["scenarios"] = json::array();
    for (const auto& s : summary.scenarios) {
        json entry;
        entry["name"] = s.name;
        entry["replications"] = s.replications;
        entry["successes"] = s.successes;
        entry["mean"] = real_or_null(s.mean);
        entry["std"] = real_or_null(s.std);
        if (s.test) {
            entry["u_statistic"] = real_or_null(s.test->statistic);
            entry["p_value"] = real_or_null(s.test->p_value);
            entry["exact"] = s.test->exact;
        } else {
            entry["u_statistic"] = nullptr;
            entry["p_value"] = nullptr;
            entry["exact"] = nullptr;
        }
        entry["significant"] = s.significant;
        entry["warnings"] = s.warnings;
        doc["scenarios"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

BoundGrid parse_bound_grid(const std::string& json_text)
{
    BoundGrid grid;
    try {
        const json doc = json::parse(json_text);
        for (const auto& [key, _] : doc.items()) {
            if (key != "cells" && key != "ratios") {
                throw SpecError("bound grid: unknown key '" + key + "'");
            }
        }
        std::size_t index = 0;
        for (const auto& c : doc.at("cells")) {
            for (const auto& [key, _] : c.items()) {
                if (key != "name" && key != "n" && key != "k" && key != "mu" && key != "p_s" && key != "p_c" &&
                    key != "variant") {
                    throw SpecError("bound grid cell: unknown key '" + key + "'");
                }
            }
            BoundCell cell;
            cell.name = c.value("name", "cell" + std::to_string(index));
            cell.inputs.n = c.at("n").get<double>();
            cell.inputs.k = c.at("k").get<double>();
            cell.inputs.mu = c.at("mu").get<double>();
            cell.inputs.p_s = c.at("p_s").get<double>();
            cell.inputs.p_c = c.at("p_c").get<double>();
            cell.inputs.variant = parse_variant(c.at("variant").get<std::string>());
            grid.cells.push_back(std::move(cell));
            ++index;
        }
        if (doc.contains("ratios")) {
            for (const auto& r : doc.at("ratios")) {
                if (!r.is_array() || r.size() != 2) {
                    throw SpecError("bound grid: ratios are [numerator, denominator] pairs");
                }
                grid.ratios.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
            }
        }
    } catch (const json::exception& e) {
        throw SpecError(std::string("bound grid: ") + e.what());
    }
    return grid;
}

BoundTable bounds_query(const BoundGrid& grid)
{
    BoundTable table;
    std::map<std::string, double> logs;
    for (const auto& cell : grid.cells) {
        BoundRow row;
        row.name = cell.name;
        row.inputs = cell.inputs;
        row.C = bound_C(cell.inputs);
        row.M = optimal_M(cell.inputs.k, row.C);
        row.bound = bound_value(cell.inputs);
        row.warnings = range_warnings(cell.inputs);
        if (!logs.emplace(row.name, row.bound.log_value).second) {
            throw SpecError("bound grid: duplicate cell name '" + row.name + "'");
        }
        table.rows.push_back(std::move(row));
    }
    for (const auto& [num, den] : grid.ratios) {
        if (!logs.count(num) || !logs.count(den)) {
            throw SpecError("bound grid: ratio refers to unknown cell '" + (logs.count(num) ? den : num) + "'");
        }
        BoundRatio r{num, den, logs.at(num) - logs.at(den), 0.0};
        r.ratio = std::exp(r.log_ratio);
        table.ratios.push_back(r);
    }
    return table;
}

std::string bound_table_to_csv(const BoundTable& table)
{
    std::string out = "name,variant,n,k,mu,p_s,p_c,C,M,log_bound,bound,warnings\n";
    for (const auto& r : table.rows) {
        std::string warnings;
        for (const auto& w : r.warnings) {
            warnings += (warnings.empty() ? "" : "; ") + w;
        }
        out += r.name + ',' + to_string(r.inputs.variant) + ',' + format_real(r.inputs.n) + ',' +
               format_real(r.inputs.k) + ',' + format_real(r.inputs.mu) + ',' + format_real(r.inputs.p_s) + ',' +
               format_real(r.inputs.p_c) + ',' + format_real(r.C) + ',' + std::to_string(r.M) + ',' +
               format_real(r.bound.log_value) + ',' + format_real(r.bound.value) + ",\"" + warnings + "\"\n";
    }
    if (!table.ratios.empty()) {
        out += "\nnumerator,denominator,log_ratio,ratio\n";
        for (const auto& r : table.ratios) {
            out += r.numerator + ',' + r.denominator + ',' + format_real(r.log_ratio) + ',' + format_real(r.ratio) +
                   '\n';
        }
    }
    return out;
}

} // namespace emo
