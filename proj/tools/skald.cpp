// skald — memory-bounded k-anonymisation of chunked tabular datasets.
//
// Subcommands: generate, anonymize, baseline, compare, lattice, init-config.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "skald/baseline.hpp"
#include "skald/config.hpp"
#include "skald/csv.hpp"
#include "skald/datagen.hpp"
#include "skald/errors.hpp"
#include "skald/metrics.hpp"
#include "skald/pipeline.hpp"

namespace fs = std::filesystem;
using namespace skald;

namespace {

struct NullSink final : OutputSink {
    void write_chunk(const Chunk&, const std::vector<std::string>&,
                     const std::vector<std::vector<std::string>>&) override {}
};

/// Globs relative to the config file's directory when the pattern is relative.
std::vector<fs::path> resolve_inputs(const ConfigFile& config, const fs::path& config_path) {
    fs::path pattern(config.input_glob);
    if (pattern.is_relative() && config_path.has_parent_path())
        pattern = config_path.parent_path() / pattern;
    auto files = expand_glob(pattern.string());
    if (files.empty()) throw Error("input glob matched no files: " + pattern.string());
    return files;
}

fs::path resolve_output(const ConfigFile& config, const fs::path& config_path,
                        const std::string& out_override) {
    fs::path out = out_override.empty() ? fs::path(config.output_dir) : fs::path(out_override);
    if (out.empty()) throw Error("no output directory configured");
    if (out.is_relative() && out_override.empty() && config_path.has_parent_path())
        out = config_path.parent_path() / out;
    return out;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

int cmd_generate(const std::string& out_dir, std::uint64_t chunks, std::uint64_t rows,
                 std::uint64_t seed, bool verbose) {
    GeneratorRecipe recipe{seed, rows, chunks};
    auto files = generate(recipe, out_dir);
    if (verbose)
        for (const auto& f : files) std::cout << f.string() << '\n';
    std::cout << "wrote " << files.size() << " chunk files to " << out_dir << '\n';
    return 0;
}

int cmd_anonymize(const fs::path& config_path, const std::string& out_override,
                  std::uint64_t k_override, bool verbose) {
    ConfigFile config = load_config(config_path);
    if (k_override) config.k = k_override;
    fs::path out_dir = resolve_output(config, config_path, out_override);

    PipelineConfig pc = config.to_pipeline_config();
    pc.output_dir = out_dir;
    CsvFileChunkSource source(resolve_inputs(config, config_path));
    CsvDirSink sink(out_dir);

    AnonymisationReport report = run(pc, source, sink);
    std::string text = format_report_text(report);
    write_file(out_dir / "report.txt", text);
    write_file(out_dir / "report.kv", format_report_kv(report));
    std::cout << text;
    if (verbose) std::cout << "passes over input: " << source.passes() << '\n';
    return 0;
}

int cmd_baseline(const fs::path& config_path, const std::string& out_override,
                 std::uint64_t k_override) {
    ConfigFile config = load_config(config_path);
    if (k_override) config.k = k_override;
    fs::path out_dir = resolve_output(config, config_path, out_override);
    fs::create_directories(out_dir);

    PipelineConfig pc = config.to_pipeline_config();
    CsvFileChunkSource source(resolve_inputs(config, config_path));
    Phase1Result p1 = phase1(pc, source);
    EffectiveSchema eff = make_effective_schema(pc.schema, p1.codebooks);

    BaselineReport report = baseline_run(source, pc, eff);
    std::string text = format_baseline_report(report);
    write_file(out_dir / "baseline_report.txt", text);
    std::cout << text;
    return 0;
}

int cmd_compare(const fs::path& config_path, const std::string& out_override) {
    ConfigFile config = load_config(config_path);
    if (!config.compare) throw ConfigError("config has no 'compare' section");
    const CompareGrid& grid = *config.compare;
    fs::path out_dir = resolve_output(config, config_path, out_override);
    fs::create_directories(out_dir);

    std::string csv = "k,chunks,dm_star_skald,dm_star_baseline,ratio\n";
    std::cout << "k\tchunks\tDM*_skald\tDM*_baseline\tratio\n";

    for (std::uint64_t chunks : grid.chunk_counts) {
        GeneratorRecipe recipe{grid.seed, grid.rows_per_chunk, chunks};
        MemoryChunkSource data(generate_chunks(recipe));

        for (std::uint64_t k : grid.k_values) {
            PipelineConfig pc = config.to_pipeline_config();
            pc.k = k;
            pc.schema.chunk_rows = static_cast<std::int64_t>(grid.rows_per_chunk);
            if (grid.n_ram_override) pc.n_ram_override = grid.n_ram_override;
            pc.output_dir.clear();

            NullSink sink;
            AnonymisationReport skald_report = run(pc, data, sink);

            Phase1Result p1 = phase1(pc, data);
            EffectiveSchema eff = make_effective_schema(pc.schema, p1.codebooks);
            BaselineReport base = baseline_run(data, pc, eff);

            double ratio = dm_ratio(base.dm_star_total, skald_report.loss.dm_star);
            csv += std::to_string(k) + "," + std::to_string(chunks) + "," +
                   std::to_string(skald_report.loss.dm_star) + "," +
                   std::to_string(base.dm_star_total) + "," + std::to_string(ratio) + "\n";
            std::cout << k << '\t' << chunks << '\t' << skald_report.loss.dm_star << '\t'
                      << base.dm_star_total << '\t' << ratio << '\n';
        }
    }
    write_file(out_dir / "compare.csv", csv);
    std::cout << "wrote " << (out_dir / "compare.csv").string() << '\n';
    return 0;
}

int cmd_lattice(const fs::path& config_path, int phase) {
    ConfigFile config = load_config(config_path);
    PipelineConfig pc = config.to_pipeline_config();
    CsvFileChunkSource source(resolve_inputs(config, config_path));

    Phase1Result p1 = phase1(pc, source);
    EffectiveSchema eff = make_effective_schema(pc.schema, p1.codebooks);

    std::map<std::vector<int>, std::string> scores;
    if (phase == 1) {
        Lattice lattice(eff.root_node(), eff.top_node(), eff.importance_order);
        SearchResult search = ola_search(lattice, [&](const GeneralisationNode& n) {
            std::uint64_t bins = n_data(n, eff);
            scores[n.levels] = "n_data=" + std::to_string(bins);
            return bins <= p1.bin_budget;
        });
        std::cout << dump_lattice(lattice, search.tags, scores);
    } else {
        Histogram root = build_histogram(source, p1.ram_node, eff, p1.bin_budget);
        Lattice lattice(p1.ram_node, eff.top_node(), eff.importance_order);
        SearchResult search = ola_search(lattice, [&](const GeneralisationNode& n) {
            Histogram merged = merge_to(root, n, eff);
            scores[n.levels] = "dm_star=" + std::to_string(dm_star(merged, pc.k));
            return is_k_anonymous(merged, pc.k, pc.suppression_limit).pass;
        });
        std::cout << dump_lattice(lattice, search.tags, scores);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"memory-bounded k-anonymisation over chunked CSV datasets"};
    app.require_subcommand(1);
    app.fallthrough();
    bool verbose = false;
    app.add_flag("--verbose", verbose, "extra diagnostics");

    auto* gen = app.add_subcommand("generate", "generate a synthetic chunked dataset");
    std::string gen_out;
    std::uint64_t gen_chunks = 1, gen_rows = 1000, gen_seed = 1;
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_option("--chunks", gen_chunks, "number of chunk files");
    gen->add_option("--rows", gen_rows, "rows per chunk");
    gen->add_option("--seed", gen_seed, "generator seed");

    std::string config_path, out_override;
    std::uint64_t k_override = 0;
    int phase = 1;

    auto* anon = app.add_subcommand("anonymize", "run the three-phase pipeline");
    anon->add_option("--config", config_path, "config file")->required();
    anon->add_option("--out", out_override, "override output directory");
    anon->add_option("--k", k_override, "override k");

    auto* base = app.add_subcommand("baseline", "per-chunk optimal baseline");
    base->add_option("--config", config_path, "config file")->required();
    base->add_option("--out", out_override, "override output directory");
    base->add_option("--k", k_override, "override k");

    auto* cmp = app.add_subcommand("compare", "pipeline vs baseline over a k/chunks grid");
    cmp->add_option("--config", config_path, "config file")->required();
    cmp->add_option("--out", out_override, "override output directory");

    auto* lat = app.add_subcommand("lattice", "dump lattice tags and scores");
    lat->add_option("--config", config_path, "config file")->required();
    lat->add_option("--phase", phase, "1 = budget lattice, 2 = k-anonymity lattice")
        ->check(CLI::Range(1, 2));

    auto* init = app.add_subcommand("init-config", "write the example configuration");
    init->add_option("--out", out_override, "config file to write")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(gen_out, gen_chunks, gen_rows, gen_seed, verbose);
        if (anon->parsed()) return cmd_anonymize(config_path, out_override, k_override, verbose);
        if (base->parsed()) return cmd_baseline(config_path, out_override, k_override);
        if (cmp->parsed()) return cmd_compare(config_path, out_override);
        if (lat->parsed()) return cmd_lattice(config_path, phase);
        if (init->parsed()) {
            save_config(example_config(), out_override);
            std::cout << "wrote " << out_override << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
