#include "skald/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "skald/datagen.hpp"
#include "skald/errors.hpp"
#include "skald/hierarchy.hpp"

namespace skald {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json unit_to_json(std::int64_t scale) {
    if (scale == 1) return 1;
    return 1.0 / static_cast<double>(scale);
}

std::int64_t unit_from_json(const json& j) {
    double unit = j.get<double>();
    if (unit <= 0) throw ConfigError("ladder unit must be positive");
    if (unit >= 1.0) {
        if (std::llround(unit) != 1) throw ConfigError("ladder unit must be 1 or a fraction 1/N");
        return 1;
    }
    return std::llround(1.0 / unit);
}

std::int64_t units_from_json(const json& j, std::int64_t scale, const char* field) {
    std::string text = j.is_string() ? j.get<std::string>() : j.dump();
    auto units = parse_units(text, scale);
    if (!units) throw ConfigError(std::string("unparseable ladder ") + field + ": " + text);
    return *units;
}

ordered_json qid_to_json(const QidSpec& q) {
    ordered_json out;
    out["name"] = q.name;
    out["kind"] = q.kind == AttributeKind::CategoricalQid ? "categorical" : "numerical";
    out["importance_rank"] = q.importance_rank;
    if (q.kind == AttributeKind::CategoricalQid) {
        ordered_json levels = ordered_json::array();
        for (const auto& level : q.hierarchy->levels) {
            ordered_json table = ordered_json::object();
            for (const auto& [value, label] : level) table[value] = label;
            levels.push_back(std::move(table));
        }
        out["hierarchy"] = {{"levels", std::move(levels)}};
    } else {
        const NumericalLadder& l = *q.ladder;
        out["encode"] = q.encode;
        out["ladder"] = {{"unit", unit_to_json(l.unit_scale)},
                         {"min", render_units(l.domain_min, l.unit_scale)},
                         {"max", render_units(l.domain_max, l.unit_scale)},
                         {"widths", l.widths},
                         {"anchor", l.anchor}};
    }
    return out;
}

QidSpec qid_from_json(const json& j) {
    QidSpec q;
    q.name = j.at("name").get<std::string>();
    q.importance_rank = j.at("importance_rank").get<int>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "categorical") {
        q.kind = AttributeKind::CategoricalQid;
        CategoricalHierarchy h;
        for (const auto& level : j.at("hierarchy").at("levels")) {
            std::map<std::string, std::string> table;
            for (auto it = level.begin(); it != level.end(); ++it)
                table[it.key()] = it.value().get<std::string>();
            h.levels.push_back(std::move(table));
        }
        h.compile();
        q.hierarchy = std::move(h);
    } else if (kind == "numerical") {
        q.kind = AttributeKind::NumericalQid;
        q.encode = j.value("encode", false);
        const json& lj = j.at("ladder");
        NumericalLadder l;
        l.unit_scale = unit_from_json(lj.at("unit"));
        l.domain_min = units_from_json(lj.at("min"), l.unit_scale, "min");
        l.domain_max = units_from_json(lj.at("max"), l.unit_scale, "max");
        l.widths = lj.at("widths").get<std::vector<std::int64_t>>();
        l.anchor = lj.value("anchor", 0);
        q.ladder = std::move(l);
    } else {
        throw ConfigError("unknown QID kind '" + kind + "'");
    }
    return q;
}

} // namespace

PipelineConfig ConfigFile::to_pipeline_config() const {
    PipelineConfig pc;
    pc.schema = schema;
    pc.k = k;
    pc.suppression_limit = suppression_limit;
    pc.sparsity_threshold = sparsity_threshold;
    pc.n_ram_override = n_ram_override;
    pc.output_dir = output_dir;
    return pc;
}

std::string serialise_config(const ConfigFile& config) {
    ordered_json out;
    out["k"] = config.k;
    out["suppression_limit"] = config.suppression_limit;
    out["sparsity_threshold"] = config.sparsity_threshold;
    if (config.n_ram_override) out["n_ram_override"] = *config.n_ram_override;
    out["chunk_rows"] = config.schema.chunk_rows;
    if (config.schema.record_bytes > 0)
        out["record_bytes"] = config.schema.record_bytes;
    else
        out["record_bytes"] = "auto";
    out["input_glob"] = config.input_glob;
    out["output_dir"] = config.output_dir;

    ordered_json columns = ordered_json::array();
    for (const auto& [name, kind] : config.schema.columns)
        columns.push_back({{"name", name}, {"kind", to_string(kind)}});
    out["columns"] = std::move(columns);

    ordered_json qids = ordered_json::array();
    for (const auto& q : config.schema.qids) qids.push_back(qid_to_json(q));
    out["qids"] = std::move(qids);

    if (config.compare) {
        out["compare"] = {{"k_values", config.compare->k_values},
                          {"chunk_counts", config.compare->chunk_counts},
                          {"rows_per_chunk", config.compare->rows_per_chunk},
                          {"seed", config.compare->seed}};
        if (config.compare->n_ram_override)
            out["compare"]["n_ram_override"] = *config.compare->n_ram_override;
    }
    return out.dump(2) + "\n";
}

ConfigFile parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        ConfigFile config;
        config.k = j.at("k").get<std::uint64_t>();
        config.suppression_limit = j.value("suppression_limit", 0.05);
        config.sparsity_threshold = j.value("sparsity_threshold", 10.0);
        if (j.contains("n_ram_override") && !j["n_ram_override"].is_null())
            config.n_ram_override = j["n_ram_override"].get<std::uint64_t>();
        config.schema.chunk_rows = j.at("chunk_rows").get<std::int64_t>();
        const json& rb = j.at("record_bytes");
        config.schema.record_bytes = rb.is_string() ? 0 : rb.get<std::int64_t>();
        config.input_glob = j.value("input_glob", "");
        config.output_dir = j.value("output_dir", "");

        for (const auto& col : j.at("columns")) {
            auto kind = attribute_kind_from_string(col.at("kind").get<std::string>());
            if (!kind) throw ConfigError("unknown column kind in config");
            config.schema.columns.emplace_back(col.at("name").get<std::string>(), *kind);
        }
        for (const auto& q : j.at("qids")) config.schema.qids.push_back(qid_from_json(q));

        if (j.contains("compare")) {
            const json& c = j["compare"];
            CompareGrid grid;
            grid.k_values = c.at("k_values").get<std::vector<std::uint64_t>>();
            grid.chunk_counts = c.at("chunk_counts").get<std::vector<std::uint64_t>>();
            grid.rows_per_chunk = c.value("rows_per_chunk", std::uint64_t{10000});
            grid.seed = c.value("seed", std::uint64_t{7});
            if (c.contains("n_ram_override") && !c["n_ram_override"].is_null())
                grid.n_ram_override = c["n_ram_override"].get<std::uint64_t>();
            config.compare = std::move(grid);
        }

        if (config.k < 2) throw ConfigError("k must be >= 2");
        auto violations = validate_schema(config.schema);
        if (!violations.empty()) {
            std::string msg = "invalid schema:";
            for (const auto& v : violations) msg += "\n  " + v;
            throw ConfigError(msg);
        }
        return config;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

ConfigFile load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void save_config(const ConfigFile& config, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << serialise_config(config);
}

ConfigFile example_config() {
    ConfigFile config;
    config.schema = example_schema();
    config.schema.chunk_rows = 10000;
    config.k = 50;
    config.input_glob = "data/chunk_*.csv";
    config.output_dir = "out";
    config.compare = CompareGrid{{10, 50}, {1, 5, 25}, 10000, 7, 4'000'000'000};
    return config;
}

} // namespace skald
