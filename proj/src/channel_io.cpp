#include "cutoff/channel_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cutoff::dmc {

using nlohmann::json;

ChannelFile parse_channel_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("channel file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("transition"))
        throw std::invalid_argument("channel file must be an object with a \"transition\" field");
    const json& t = j["transition"];
    if (!t.is_array() || t.empty() || !t.front().is_array())
        throw std::invalid_argument("\"transition\" must be a nonempty array of rows");

    std::vector<std::vector<double>> rows;
    rows.reserve(t.size());
    for (const auto& row : t) {
        if (!row.is_array()) throw std::invalid_argument("\"transition\" rows must be arrays");
        std::vector<double> r;
        r.reserve(row.size());
        for (const auto& v : row) {
            if (!v.is_number()) throw std::invalid_argument("\"transition\" entries must be numbers");
            r.push_back(v.get<double>());
        }
        rows.push_back(std::move(r));
    }
    Dmc channel = Dmc::from_rows(rows); // validates stochasticity

    std::optional<CostSpec> cost;
    const bool has_cost = j.contains("cost"), has_budget = j.contains("budget");
    if (has_cost != has_budget)
        throw std::invalid_argument("\"cost\" and \"budget\" must be given together");
    if (has_cost) {
        CostSpec cs;
        if (!j["cost"].is_array()) throw std::invalid_argument("\"cost\" must be an array");
        for (const auto& v : j["cost"]) {
            if (!v.is_number()) throw std::invalid_argument("\"cost\" entries must be numbers");
            cs.cost.push_back(v.get<double>());
        }
        if (!j["budget"].is_number()) throw std::invalid_argument("\"budget\" must be a number");
        cs.budget = j["budget"].get<double>();
        cs.validate(channel.num_inputs());
        cost = std::move(cs);
    }
    return ChannelFile{std::move(channel), std::move(cost)};
}

ChannelFile load_channel_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open channel file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_channel_json(buf.str());
}

std::string channel_to_json(const Dmc& w, const std::optional<CostSpec>& cost)
{
    json j;
    json rows = json::array();
    for (std::size_t x = 0; x < w.num_inputs(); ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < w.num_outputs(); ++y) row.push_back(w(x, y));
        rows.push_back(std::move(row));
    }
    j["transition"] = std::move(rows);
    if (cost) {
        j["cost"] = cost->cost;
        j["budget"] = cost->budget;
    }
    return j.dump(2) + "\n";
}

} // namespace cutoff::dmc
