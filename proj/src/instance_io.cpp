#include "l3cvrp/instance_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

namespace l3cvrp {

using Json = nlohmann::ordered_json;

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool has_letters(const std::string& s)
{
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isalpha(c) != 0; });
}

std::vector<double> numbers_in(const std::string& s, int line)
{
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok)
    {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ParseError(line, "expected a number, found '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

int as_int(double v, int line, const char* what)
{
    if (v != static_cast<double>(static_cast<long>(v)))
        throw ParseError(line, std::string(what) + " must be an integer");
    return static_cast<int>(v);
}

/// Positions of length, width and height in a header such as "h - w - l".
std::array<int, 3> dimension_order(const std::string& header, std::array<int, 3> fallback)
{
    std::istringstream in(lower(header));
    std::string tok;
    std::vector<char> seen;
    while (in >> tok)
    {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return !std::isalpha(c); }),
                  tok.end());
        if (tok == "l" || tok == "length")
            seen.push_back('l');
        else if (tok == "w" || tok == "width")
            seen.push_back('w');
        else if (tok == "h" || tok == "height")
            seen.push_back('h');
    }
    if (seen.size() != 3)
        return fallback;
    std::array<int, 3> order{};
    for (int k = 0; k < 3; ++k)
        order[seen[k] == 'l' ? 0 : (seen[k] == 'w' ? 1 : 2)] = k;
    return order;
}

struct NodeLine
{
    int id;
    double x, y, demand;
    int line;
};

}  // namespace

Instance parse_benchmark(std::string_view text)
{
    enum class Section
    {
        Header,
        Capacity,
        Nodes,
        Items
    };
    Section section = Section::Header;

    std::string name;
    std::optional<int> declaredCustomers, declaredVehicles, declaredItems;
    int customersLine = 0, itemsLine = 0;
    std::optional<std::array<double, 4>> capacity;  // Q, L, W, H
    std::array<int, 3> capacityOrder{2, 1, 0};      // height - width - length
    std::array<int, 3> itemOrder{2, 1, 0};
    std::vector<NodeLine> nodes;
    std::map<int, std::vector<ItemSpec>> items;
    std::map<int, int> itemLine;

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineNo = 0;
    while (std::getline(in, raw))
    {
        ++lineNo;
        std::string line = raw;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;

        if (has_letters(line))
        {
            const std::string l = lower(line);
            const auto colon = line.find(':');
            const std::string value = colon == std::string::npos ? "" : line.substr(colon + 1);
            const std::string key = colon == std::string::npos ? l : l.substr(0, colon);
            auto trimmed = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };

            if (key.find("capacity") != std::string::npos)
            {
                capacityOrder = dimension_order(key, capacityOrder);
                section = Section::Capacity;
                auto nums = numbers_in(trimmed(value), lineNo);
                if (!nums.empty())
                {
                    if (nums.size() != 4)
                        throw ParseError(lineNo, "capacity line needs four numbers");
                    capacity = {nums[0], nums[1 + capacityOrder[0]], nums[1 + capacityOrder[1]],
                                nums[1 + capacityOrder[2]]};
                    section = Section::Header;
                }
            }
            else if (key.find("name") != std::string::npos && colon != std::string::npos)
                name = trimmed(value);
            else if (key.find("demand") != std::string::npos)
                section = Section::Nodes;
            else if (key.find("fragil") != std::string::npos
                     || (key.find("item") != std::string::npos && colon == std::string::npos))
            {
                itemOrder = dimension_order(key, itemOrder);
                section = Section::Items;
            }
            else if (colon != std::string::npos && !trimmed(value).empty() && !has_letters(value))
            {
                auto nums = numbers_in(trimmed(value), lineNo);
                if (nums.size() != 1)
                    throw ParseError(lineNo, "expected one value after ':'");
                if (key.find("customer") != std::string::npos)
                {
                    declaredCustomers = as_int(nums[0], lineNo, "customer count");
                    customersLine = lineNo;
                }
                else if (key.find("vehicle") != std::string::npos)
                    declaredVehicles = as_int(nums[0], lineNo, "vehicle count");
                else if (key.find("item") != std::string::npos)
                {
                    declaredItems = as_int(nums[0], lineNo, "item count");
                    itemsLine = lineNo;
                }
            }
            continue;
        }

        auto nums = numbers_in(line, lineNo);
        switch (section)
        {
            case Section::Capacity:
                if (nums.size() != 4)
                    throw ParseError(lineNo, "capacity line needs four numbers");
                capacity = {nums[0], nums[1 + capacityOrder[0]], nums[1 + capacityOrder[1]],
                            nums[1 + capacityOrder[2]]};
                section = Section::Header;
                break;
            case Section::Nodes:
                if (nums.size() != 4)
                    throw ParseError(lineNo, "node line needs id, x, y and demand");
                nodes.push_back({as_int(nums[0], lineNo, "node id"), nums[1], nums[2], nums[3], lineNo});
                break;
            case Section::Items:
            {
                if (nums.size() < 2)
                    throw ParseError(lineNo, "item line needs node id and item count");
                const int id = as_int(nums[0], lineNo, "node id");
                const int m = as_int(nums[1], lineNo, "item count");
                if (m < 0 || nums.size() != 2 + 4 * static_cast<size_t>(m))
                    throw ParseError(lineNo, "item line lists a different number of items than declared");
                if (items.count(id))
                    throw ParseError(lineNo, "items of node " + std::to_string(id) + " listed twice");
                auto& list = items[id];
                itemLine[id] = lineNo;
                for (int k = 0; k < m; ++k)
                {
                    const double* d = &nums[2 + 4 * k];
                    ItemSpec it;
                    it.length = as_int(d[itemOrder[0]], lineNo, "item length");
                    it.width = as_int(d[itemOrder[1]], lineNo, "item width");
                    it.height = as_int(d[itemOrder[2]], lineNo, "item height");
                    it.fragile = d[3] != 0.0;
                    list.push_back(it);
                }
                break;
            }
            case Section::Header:
                throw ParseError(lineNo, "numbers outside of any section");
        }
    }

    if (!capacity)
        throw ParseError(lineNo, "missing capacity line");
    if (!declaredVehicles)
        throw ParseError(lineNo, "missing vehicle count");
    if (nodes.empty())
        throw ParseError(lineNo, "missing node section");

    Instance inst;
    inst.name = name;
    inst.vehicle = {*declaredVehicles, (*capacity)[0], as_int((*capacity)[1], lineNo, "container length"),
                    as_int((*capacity)[2], lineNo, "container width"), as_int((*capacity)[3], lineNo, "container height")};
    inst.depot_x = nodes.front().x;
    inst.depot_y = nodes.front().y;
    if (items.count(nodes.front().id))
        throw ParseError(itemLine[nodes.front().id], "the depot cannot have items");

    std::set<int> ids{nodes.front().id};
    int total = 0;
    for (size_t k = 1; k < nodes.size(); ++k)
    {
        const auto& nd = nodes[k];
        if (!ids.insert(nd.id).second)
            throw ParseError(nd.line, "node " + std::to_string(nd.id) + " listed twice");
        auto it = items.find(nd.id);
        if (it == items.end() || it->second.empty())
            throw ParseError(nd.line, "node " + std::to_string(nd.id) + " has no items");
        CustomerRecord c;
        c.id = static_cast<int>(k);
        c.x = nd.x;
        c.y = nd.y;
        c.weight = nd.demand;
        c.items = it->second;
        total += static_cast<int>(c.items.size());
        inst.customers.push_back(std::move(c));
    }
    for (const auto& [id, list] : items)
        if (!ids.count(id))
            throw ParseError(itemLine[id], "items for unknown node " + std::to_string(id));

    if (declaredCustomers && *declaredCustomers != inst.num_customers())
        throw ParseError(customersLine, "declares " + std::to_string(*declaredCustomers) + " customers but lists "
                                            + std::to_string(inst.num_customers()));
    if (declaredItems && *declaredItems != total)
        throw ParseError(itemsLine,
                         "declares " + std::to_string(*declaredItems) + " items but lists " + std::to_string(total));

    static const std::regex kName(R"(E(\d{3})-.*)");
    std::smatch m;
    if (std::regex_match(inst.name, m, kName) && std::stoi(m[1]) - 1 != inst.num_customers())
        throw ParseError(customersLine, "name " + inst.name + " does not match the customer count");

    finalize(inst);
    return inst;
}

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw ValidationError(where + ": missing \"" + key + "\"");
    return obj.at(key);
}

template <typename T>
T get_as(const Json& obj, const char* key, const std::string& where)
{
    const Json& v = require(obj, key, where);
    try
    {
        if constexpr (std::is_same_v<T, int>)
        {
            if (!v.is_number_integer())
                throw ValidationError(where + ": \"" + key + "\" must be an integer");
        }
        else if constexpr (std::is_same_v<T, double>)
        {
            if (!v.is_number())
                throw ValidationError(where + ": \"" + key + "\" must be a number");
        }
        else if constexpr (std::is_same_v<T, bool>)
        {
            if (!v.is_boolean())
                throw ValidationError(where + ": \"" + key + "\" must be a boolean");
        }
        return v.get<T>();
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ValidationError(where + ": \"" + key + "\": " + e.what());
    }
}

Json parse_json(std::string_view text)
{
    try
    {
        return Json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        const size_t upto = std::min(e.byte, text.size());
        const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
        throw ParseError(line, e.what());
    }
}

}  // namespace

Instance parse_canonical(std::string_view text)
{
    const Json j = parse_json(text);
    if (!j.is_object())
        throw ValidationError("instance: top level must be an object");

    Instance inst;
    if (j.contains("name"))
    {
        if (!j["name"].is_string())
            throw ValidationError("instance: \"name\" must be a string");
        inst.name = j["name"].get<std::string>();
    }
    const Json& veh = require(j, "vehicle", "instance");
    inst.vehicle.count = get_as<int>(veh, "count", "vehicle");
    inst.vehicle.weight_capacity = get_as<double>(veh, "weight_capacity", "vehicle");
    inst.vehicle.length = get_as<int>(veh, "length", "vehicle");
    inst.vehicle.width = get_as<int>(veh, "width", "vehicle");
    inst.vehicle.height = get_as<int>(veh, "height", "vehicle");

    const Json& depot = require(j, "depot", "instance");
    inst.depot_x = get_as<double>(depot, "x", "depot");
    inst.depot_y = get_as<double>(depot, "y", "depot");

    const Json& cs = require(j, "customers", "instance");
    if (!cs.is_array())
        throw ValidationError("instance: \"customers\" must be an array");
    for (const auto& cj : cs)
    {
        CustomerRecord c;
        const std::string where = "customer";
        c.id = get_as<int>(cj, "id", where);
        const std::string who = "customer " + std::to_string(c.id);
        c.x = get_as<double>(cj, "x", who);
        c.y = get_as<double>(cj, "y", who);
        c.weight = get_as<double>(cj, "weight", who);
        const Json& items = require(cj, "items", who);
        if (!items.is_array())
            throw ValidationError(who + ": \"items\" must be an array");
        for (const auto& ij : items)
        {
            ItemSpec it;
            it.length = get_as<int>(ij, "l", who + " item");
            it.width = get_as<int>(ij, "w", who + " item");
            it.height = get_as<int>(ij, "h", who + " item");
            it.fragile = get_as<bool>(ij, "fragile", who + " item");
            c.items.push_back(it);
        }
        inst.customers.push_back(std::move(c));
    }
    finalize(inst);
    return inst;
}

std::string write_canonical(const Instance& instance)
{
    Json j;
    j["name"] = instance.name;
    j["vehicle"] = {{"count", instance.vehicle.count},
                    {"weight_capacity", instance.vehicle.weight_capacity},
                    {"length", instance.vehicle.length},
                    {"width", instance.vehicle.width},
                    {"height", instance.vehicle.height}};
    j["depot"] = {{"x", instance.depot_x}, {"y", instance.depot_y}};
    Json cs = Json::array();
    for (const auto& c : instance.customers)
    {
        Json items = Json::array();
        for (const auto& it : c.items)
            items.push_back({{"l", it.length}, {"w", it.width}, {"h", it.height}, {"fragile", it.fragile}});
        cs.push_back({{"id", c.id}, {"x", c.x}, {"y", c.y}, {"weight", c.weight}, {"items", items}});
    }
    j["customers"] = cs;
    return j.dump(2) + "\n";
}

Instance parse_instance(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{')
        return parse_canonical(text);
    return parse_benchmark(text);
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Instance read_instance_file(const std::string& path) { return parse_instance(read_text_file(path)); }

std::string write_solution(const SolutionReport& report)
{
    std::set<int> seen;
    for (const auto& r : report.routes)
        for (int c : r.sequence)
            if (!seen.insert(c).second)
                throw ValidationError("customer " + std::to_string(c) + " is visited twice");

    Json j;
    j["instance"] = report.instance;
    j["variant"] = report.variant;
    j["objective"] = report.has_incumbent ? Json(report.objective) : Json(nullptr);
    j["lower_bound"] = report.lower_bound;
    j["gap"] = report.has_incumbent ? Json(report.gap) : Json(nullptr);
    Json routes = Json::array();
    for (const auto& r : report.routes)
    {
        Json ps = Json::array();
        for (const auto& p : r.placements)
            ps.push_back({{"customer", p.item.customer},
                          {"item", p.item.index},
                          {"x", p.x},
                          {"y", p.y},
                          {"z", p.z},
                          {"rotated", p.rotated}});
        routes.push_back({{"sequence", r.sequence}, {"placements", ps}});
    }
    j["routes"] = routes;

    const auto& s = report.stats;
    Json cuts = Json::object();
    for (const auto& [k, v] : s.cuts)
        cuts[k] = v;
    j["stats"] = {{"status", to_string(report.status)},
                  {"nodes", s.nodes},
                  {"t_total", s.t_total},
                  {"t_int", s.t_int},
                  {"t_frac", s.t_frac},
                  {"t_sp", s.t_sp},
                  {"t_preprocess", s.t_preprocess},
                  {"root_bound", s.root_bound},
                  {"k_min", s.k_min},
                  {"removed_arcs", s.removed_arcs},
                  {"routes_stored", s.routes_stored},
                  {"infeasible_sets", s.infeasible_sets},
                  {"exact_checks", s.exact_checks},
                  {"heuristic_successes", s.heuristic_successes},
                  {"integer_callbacks", s.integer_callbacks},
                  {"lp_iterations", s.lp_iterations},
                  {"cuts", cuts}};
    return j.dump(2) + "\n";
}

SolutionReport parse_solution(std::string_view text)
{
    const Json j = parse_json(text);
    SolutionReport r;
    r.instance = require(j, "instance", "solution").get<std::string>();
    r.variant = require(j, "variant", "solution").get<std::string>();
    const Json& obj = require(j, "objective", "solution");
    r.has_incumbent = !obj.is_null();
    r.objective = r.has_incumbent ? obj.get<double>() : 0.0;
    r.lower_bound = get_as<double>(j, "lower_bound", "solution");
    const Json& gap = require(j, "gap", "solution");
    r.gap = gap.is_null() ? 0.0 : gap.get<double>();
    for (const auto& rj : require(j, "routes", "solution"))
    {
        RouteReport route;
        for (const auto& c : require(rj, "sequence", "route"))
            route.sequence.push_back(c.get<int>());
        for (const auto& pj : require(rj, "placements", "route"))
        {
            Placement p;
            p.item.customer = get_as<int>(pj, "customer", "placement");
            p.item.index = get_as<int>(pj, "item", "placement");
            p.x = get_as<int>(pj, "x", "placement");
            p.y = get_as<int>(pj, "y", "placement");
            p.z = get_as<int>(pj, "z", "placement");
            p.rotated = get_as<bool>(pj, "rotated", "placement");
            route.placements.push_back(p);
        }
        r.routes.push_back(std::move(route));
    }
    if (j.contains("stats") && j["stats"].contains("status"))
    {
        const auto st = j["stats"]["status"].get<std::string>();
        r.status = st == "optimal" ? SolveStatus::Optimal
                                   : (st == "infeasible" ? SolveStatus::Infeasible : SolveStatus::TimeLimit);
    }
    if (j.contains("stats") && j["stats"].contains("nodes"))
        r.stats.nodes = j["stats"]["nodes"].get<long>();
    return r;
}

}  // namespace l3cvrp
