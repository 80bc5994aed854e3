#include "knapga/knapsack.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace knapga {

namespace {

using Kind = InstanceError::Kind;

void check_length(const Chromosome& c, const KnapsackInstance& inst)
{
    if (c.size() != inst.size())
        throw ContractViolation("chromosome length " + std::to_string(c.size()) +
                                " does not match instance item count " +
                                std::to_string(inst.size()));
}

std::int64_t checked_sum(std::span<const std::int64_t> xs, const char* what)
{
    std::int64_t total = 0;
    for (auto x : xs) {
        if (x > std::numeric_limits<std::int64_t>::max() - total)
            throw InstanceError(Kind::Overflow, std::string(what) + " sum exceeds 64-bit range");
        total += x;
    }
    return total;
}

std::vector<std::int64_t> read_int_array(const nlohmann::json& doc, const char* key)
{
    auto it = doc.find(key);
    if (it == doc.end())
        throw InstanceError(Kind::Malformed, std::string("missing field \"") + key + "\"");
    if (!it->is_array())
        throw InstanceError(Kind::Malformed, std::string("field \"") + key + "\" must be an array");

    std::vector<std::int64_t> out;
    out.reserve(it->size());
    for (std::size_t i = 0; i < it->size(); ++i) {
        const auto& x = (*it)[i];
        if (x.is_number_unsigned()) {
            auto u = x.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
                throw InstanceError(Kind::Overflow, std::string(key) + "[" + std::to_string(i) +
                                                        "] exceeds 64-bit range");
            out.push_back(static_cast<std::int64_t>(u));
        } else if (x.is_number_integer()) {
            auto v = x.get<std::int64_t>();
            if (v < 0)
                throw InstanceError(Kind::NegativeNumber, std::string(key) + "[" +
                                                              std::to_string(i) + "] is negative");
            out.push_back(v);
        } else {
            throw InstanceError(Kind::Malformed, std::string(key) + "[" + std::to_string(i) +
                                                     "] is not an integer");
        }
    }
    return out;
}

std::int64_t read_capacity(const nlohmann::json& doc)
{
    auto it = doc.find("capacity");
    if (it == doc.end())
        throw InstanceError(Kind::Malformed, "missing field \"capacity\"");
    if (it->is_number_unsigned()) {
        auto u = it->get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            throw InstanceError(Kind::Overflow, "capacity exceeds 64-bit range");
        return static_cast<std::int64_t>(u);
    }
    if (it->is_number_integer()) {
        auto v = it->get<std::int64_t>();
        if (v < 0)
            throw InstanceError(Kind::NegativeNumber, "capacity is negative");
        return v;
    }
    throw InstanceError(Kind::Malformed, "capacity is not an integer");
}

} // namespace

Chromosome::Chromosome(std::vector<Gene> genes) : genes_(std::move(genes))
{
    for (auto g : genes_)
        if (g > 1)
            throw ContractViolation("gene value must be 0 or 1");
}

Chromosome Chromosome::from_string(std::string_view bits)
{
    std::vector<Gene> genes;
    genes.reserve(bits.size());
    for (char ch : bits) {
        if (ch != '0' && ch != '1')
            throw ContractViolation("bitstring may only contain '0' and '1'");
        genes.push_back(static_cast<Gene>(ch - '0'));
    }
    return Chromosome(std::move(genes));
}

std::string Chromosome::to_string() const
{
    std::string s;
    s.reserve(genes_.size());
    for (auto g : genes_)
        s.push_back(static_cast<char>('0' + g));
    return s;
}

KnapsackInstance::KnapsackInstance(std::vector<std::int64_t> weights,
                                   std::vector<std::int64_t> values, std::int64_t capacity)
    : weights_(std::move(weights)), values_(std::move(values)), capacity_(capacity)
{
    if (weights_.size() != values_.size())
        throw InstanceError(Kind::LengthMismatch,
                            "weights has " + std::to_string(weights_.size()) +
                                " entries but values has " + std::to_string(values_.size()));
    if (weights_.empty())
        throw InstanceError(Kind::Malformed, "instance must have at least one item");
    auto negative = [](std::int64_t x) { return x < 0; };
    if (std::ranges::any_of(weights_, negative))
        throw InstanceError(Kind::NegativeNumber, "weights must be non-negative");
    if (std::ranges::any_of(values_, negative))
        throw InstanceError(Kind::NegativeNumber, "values must be non-negative");
    if (capacity_ < 0)
        throw InstanceError(Kind::NegativeNumber, "capacity must be non-negative");
    weight_sum_ = checked_sum(weights_, "weight");
    value_sum_ = checked_sum(values_, "value");
}

const KnapsackInstance& paper_instance()
{
    static const KnapsackInstance inst(
        {2, 3, 6, 7, 5, 9, 4, 5, 2, 3, 4, 1, 7, 8, 4, 5, 3},
        {6, 5, 8, 9, 6, 7, 3, 7, 4, 2, 5, 8, 3, 1, 5, 2, 8}, 29);
    return inst;
}

std::int64_t total_weight(const Chromosome& c, const KnapsackInstance& inst)
{
    check_length(c, inst);
    std::int64_t total = 0;
    auto w = inst.weights();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i])
            total += w[i];
    return total;
}

FitnessValue fitness(const Chromosome& c, const KnapsackInstance& inst)
{
    if (total_weight(c, inst) > inst.capacity())
        return {0};
    std::int64_t total = 0;
    auto v = inst.values();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i])
            total += v[i];
    return {total};
}

OptimalSolution dp_optimal(const KnapsackInstance& inst)
{
    const std::size_t n = inst.size();
    // Capacity beyond the total weight never binds.
    const auto cap = static_cast<std::size_t>(std::min(inst.capacity(), inst.weight_sum()));
    const std::size_t stride = cap + 1;
    auto w = inst.weights();
    auto v = inst.values();

    // best[i * stride + c]: optimum over the first i items with capacity c.
    std::vector<std::int64_t> best((n + 1) * stride, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        const auto wi = static_cast<std::size_t>(w[i - 1]);
        const auto* prev = &best[(i - 1) * stride];
        auto* row = &best[i * stride];
        for (std::size_t c = 0; c <= cap; ++c) {
            row[c] = prev[c];
            if (wi <= c)
                row[c] = std::max(row[c], prev[c - wi] + v[i - 1]);
        }
    }

    std::vector<Chromosome::Gene> genes(n, 0);
    std::size_t c = cap;
    for (std::size_t i = n; i > 0; --i) {
        if (best[i * stride + c] == best[(i - 1) * stride + c])
            continue;
        genes[i - 1] = 1;
        c -= static_cast<std::size_t>(w[i - 1]);
    }
    return {{best[n * stride + cap]}, Chromosome(std::move(genes))};
}

KnapsackInstance parse_instance(std::string_view json_text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InstanceError(Kind::Malformed, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw InstanceError(Kind::Malformed, "instance document must be a JSON object");
    auto weights = read_int_array(doc, "weights");
    auto values = read_int_array(doc, "values");
    auto capacity = read_capacity(doc);
    return KnapsackInstance(std::move(weights), std::move(values), capacity);
}

std::string format_instance(const KnapsackInstance& inst)
{
    nlohmann::ordered_json doc;
    doc["weights"] = std::vector<std::int64_t>(inst.weights().begin(), inst.weights().end());
    doc["values"] = std::vector<std::int64_t>(inst.values().begin(), inst.values().end());
    doc["capacity"] = inst.capacity();
    return doc.dump() + "\n";
}

KnapsackInstance load_instance(const std::filesystem::path& path)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw InstanceError(Kind::MissingFile, "instance file not found: " + path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InstanceError(Kind::Io, "cannot open instance file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str());
    } catch (const InstanceError& e) {
        throw InstanceError(e.kind(), path.string() + ": " + e.what());
    }
}

void save_instance(const KnapsackInstance& inst, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InstanceError(Kind::Io, "cannot write instance file: " + path.string());
    out << format_instance(inst);
    if (!out)
        throw InstanceError(Kind::Io, "write failed: " + path.string());
}

} // namespace knapga
