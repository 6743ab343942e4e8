// Instance and reference-front file formats.
#include "emo/problems.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace emo {

namespace {

std::string trim(std::string s)
{
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string upper(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::ifstream open_or_throw(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InstanceError("cannot open '" + path.string() + "'");
    }
    return in;
}

} // namespace

CostMatrix parse_tsplib(std::istream& in, const std::string& origin)
{
    std::size_t dimension = 0;
    std::string weight_type;
    std::string weight_format;
    std::vector<std::array<double, 2>> coords;
    std::vector<double> weights;
    bool have_coords = false;
    bool have_weights = false;

    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        std::string key = upper(t);
        if (key == "EOF") {
            break;
        }
        if (key.starts_with("NODE_COORD_SECTION")) {
            if (dimension == 0) {
                throw InstanceError(origin + ": NODE_COORD_SECTION before DIMENSION");
            }
            coords.resize(dimension);
            for (std::size_t i = 0; i < dimension; ++i) {
                long id = 0;
                double x = 0;
                double y = 0;
                if (!(in >> id >> x >> y)) {
                    throw InstanceError(origin + ": truncated NODE_COORD_SECTION");
                }
                if (id < 1 || static_cast<std::size_t>(id) > dimension) {
                    throw InstanceError(origin + ": node id " + std::to_string(id) + " out of range");
                }
                coords[static_cast<std::size_t>(id - 1)] = {x, y};
            }
            have_coords = true;
            continue;
        }
        if (key.starts_with("EDGE_WEIGHT_SECTION")) {
            if (dimension == 0) {
                throw InstanceError(origin + ": EDGE_WEIGHT_SECTION before DIMENSION");
            }
            weights.resize(dimension * dimension);
            for (auto& w : weights) {
                if (!(in >> w)) {
                    throw InstanceError(origin + ": truncated EDGE_WEIGHT_SECTION");
                }
            }
            have_weights = true;
            continue;
        }
        auto colon = t.find(':');
        if (colon == std::string::npos) {
            continue;
        }
        std::string name = upper(trim(t.substr(0, colon)));
        std::string value = trim(t.substr(colon + 1));
        if (name == "DIMENSION") {
            dimension = static_cast<std::size_t>(std::stoul(value));
        } else if (name == "EDGE_WEIGHT_TYPE") {
            weight_type = upper(value);
        } else if (name == "EDGE_WEIGHT_FORMAT") {
            weight_format = upper(value);
        }
    }

    if (weight_type == "EUC_2D") {
        if (!have_coords) {
            throw InstanceError(origin + ": EUC_2D instance without NODE_COORD_SECTION");
        }
        return CostMatrix::from_euclidean(coords);
    }
    if (weight_type == "EXPLICIT") {
        if (weight_format != "FULL_MATRIX") {
            throw InstanceError(origin + ": unsupported EDGE_WEIGHT_FORMAT '" + weight_format +
                                "' (only FULL_MATRIX is accepted)");
        }
        if (!have_weights) {
            throw InstanceError(origin + ": EXPLICIT instance without EDGE_WEIGHT_SECTION");
        }
        std::vector<std::vector<double>> rows(dimension, std::vector<double>(dimension));
        for (std::size_t i = 0; i < dimension; ++i) {
            for (std::size_t j = 0; j < dimension; ++j) {
                rows[i][j] = weights[i * dimension + j];
            }
        }
        try {
            return CostMatrix::from_rows(rows);
        } catch (const ContractViolation& e) {
            throw InstanceError(origin + ": " + e.what());
        }
    }
    throw InstanceError(origin + ": unsupported EDGE_WEIGHT_TYPE '" + weight_type +
                        "' (only EUC_2D and EXPLICIT/FULL_MATRIX are accepted)");
}

CostMatrix read_tsplib(const std::filesystem::path& path)
{
    auto in = open_or_throw(path);
    return parse_tsplib(in, path.string());
}

MotspInstance read_tsplib_instance(const std::vector<std::filesystem::path>& paths)
{
    MotspInstance inst;
    for (const auto& p : paths) {
        auto in = open_or_throw(p);
        std::ostringstream buf;
        buf << in.rdbuf();
        std::istringstream text(buf.str());
        bool euclid = upper(buf.str()).find("EUC_2D") != std::string::npos;
        CostMatrix m = parse_tsplib(text, p.string());
        if (!inst.matrices.empty() && m.dimension() != inst.cities) {
            throw InstanceError(p.string() + ": dimension " + std::to_string(m.dimension()) +
                                " differs from " + std::to_string(inst.cities) + " in the first objective file");
        }
        inst.cities = m.dimension();
        inst.matrices.push_back(std::move(m));
        inst.sources.push_back(euclid ? MotspInstance::Source::euclidean_coordinates
                                      : MotspInstance::Source::explicit_matrix);
    }
    try {
        inst.validate();
    } catch (const ContractViolation& e) {
        throw InstanceError(e.what());
    }
    return inst;
}

MotspInstance parse_motsp_json(const std::string& text)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InstanceError(std::string("instance JSON: ") + e.what());
    }
    for (const auto& [key, _] : doc.items()) {
        if (key != "D" && key != "objectives") {
            throw InstanceError("instance JSON: unknown key '" + key + "'");
        }
    }
    if (!doc.contains("D") || !doc.contains("objectives")) {
        throw InstanceError("instance JSON: 'D' and 'objectives' are required");
    }
    MotspInstance inst;
    try {
        inst.cities = doc.at("D").get<std::size_t>();
        for (const auto& obj : doc.at("objectives")) {
            auto type = obj.at("type").get<std::string>();
            if (type == "matrix") {
                inst.matrices.push_back(CostMatrix::from_rows(obj.at("data").get<std::vector<std::vector<double>>>()));
                inst.sources.push_back(MotspInstance::Source::explicit_matrix);
            } else if (type == "coords") {
                std::vector<std::array<double, 2>> coords;
                for (const auto& xy : obj.at("data")) {
                    if (xy.size() != 2) {
                        throw InstanceError("instance JSON: coordinates must be [x, y] pairs");
                    }
                    coords.push_back({xy[0].get<double>(), xy[1].get<double>()});
                }
                inst.matrices.push_back(CostMatrix::from_euclidean(coords));
                inst.sources.push_back(MotspInstance::Source::euclidean_coordinates);
            } else {
                throw InstanceError("instance JSON: unknown objective type '" + type + "'");
            }
        }
        inst.validate();
    } catch (const nlohmann::json::exception& e) {
        throw InstanceError(std::string("instance JSON: ") + e.what());
    } catch (const ContractViolation& e) {
        throw InstanceError(std::string("instance JSON: ") + e.what());
    }
    return inst;
}

MotspInstance read_motsp_json(const std::filesystem::path& path)
{
    auto in = open_or_throw(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_motsp_json(buf.str());
}

std::string motsp_to_json(const MotspInstance& inst)
{
    nlohmann::json doc;
    doc["D"] = inst.cities;
    doc["objectives"] = nlohmann::json::array();
    for (const auto& m : inst.matrices) {
        std::vector<std::vector<double>> rows(inst.cities, std::vector<double>(inst.cities));
        for (std::size_t i = 0; i < inst.cities; ++i) {
            for (std::size_t j = 0; j < inst.cities; ++j) {
                rows[i][j] = m(i, j);
            }
        }
        doc["objectives"].push_back({{"type", "matrix"}, {"data", rows}});
    }
    return doc.dump();
}

std::vector<std::vector<double>> parse_front(std::istream& in)
{
    std::vector<std::vector<double>> points;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::vector<double> v;
        std::string token;
        while (fields >> token) {
            try {
                std::size_t used = 0;
                v.push_back(std::stod(token, &used));
                if (used != token.size()) {
                    throw std::invalid_argument(token);
                }
            } catch (const std::exception&) {
                throw InstanceError("front file line " + std::to_string(lineno) + ": '" + token +
                                    "' is not a number");
            }
        }
        if (!points.empty() && v.size() != points.front().size()) {
            throw InstanceError("front file line " + std::to_string(lineno) + ": expected " +
                                std::to_string(points.front().size()) + " values");
        }
        points.push_back(std::move(v));
    }
    return points;
}

std::vector<std::vector<double>> read_front_file(const std::filesystem::path& path)
{
    auto in = open_or_throw(path);
    return parse_front(in);
}

void write_front(std::ostream& out, const ParetoFront& front)
{
    for (const auto& p : front.points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) {
                out << ' ';
            }
            out << format_real(p[i]);
        }
        out << '\n';
    }
}

} // namespace emo
