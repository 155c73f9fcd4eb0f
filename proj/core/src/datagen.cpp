#include "skald/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "skald/csv.hpp"
#include "skald/errors.hpp"

namespace skald {

namespace {

// splitmix64; self-contained so output never depends on the standard
// library's distribution implementations
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

const std::array<const char*, 8> kBloodGroups = {"A+", "A-", "B+", "B-",
                                                 "AB+", "AB-", "O+", "O-"};

struct ProfessionGroup {
    const char* domain;
    const char* sector;
    std::array<const char*, 4> members;
};

const std::array<ProfessionGroup, 4> kProfessions = {{
    {"Healthcare", "Service Sector",
     {"Medical Specialist", "Allied Health", "Nursing", "Healthcare Support"}},
    {"Education", "Service Sector",
     {"Teacher", "Professor", "Librarian", "Business Analyst"}},
    {"Creative", "Non-Service",
     {"Mixed Media Artist", "Graphic Designer", "Musician", "Writer"}},
    {"Engineering", "Non-Service",
     {"Software Engineer", "Data Scientist", "Product Manager", "Project Manager"}},
}};

const std::array<const char*, 10> kConditions = {
    "Dementia", "Gout",     "Asthma",   "Diabetes", "Hypertension",
    "Arthritis", "Migraine", "Anemia",  "Bronchitis", "Eczema"};

const std::array<const char*, 20> kFirstNames = {
    "Ekaraj", "Jack",   "Nakul",  "Chandani", "Alka",  "Ravi",  "Meera", "Arjun",
    "Priya",  "Sanjay", "Divya",  "Kiran",    "Rahul", "Anita", "Vikram", "Sneha",
    "Amit",   "Pooja",  "Rohan",  "Lakshmi"};

const std::array<const char*, 20> kLastNames = {
    "Parikh", "Shankar", "Prabhakar", "Lanka", "Kumar",  "Rao",    "Iyer",  "Sharma",
    "Patel",  "Menon",   "Reddy",     "Nair",  "Gupta",  "Joshi",  "Das",   "Bhat",
    "Verma",  "Pillai",  "Mishra",    "Sen"};

const std::array<const char*, 12> kStreets = {
    "Kala Road",    "Ganesh Chowk", "Sule Circle",  "Bahl Marg",   "Nadig Zila",
    "Temple Street", "Station Road", "Market Lane", "Lake View",   "Hill Cross",
    "Garden Path",  "River Walk"};

constexpr std::size_t kPinPoolSize = 1347;
constexpr std::int64_t kPinBase = 560000;
constexpr std::int64_t kPinSpan = 2000;

constexpr int kAgeMin = 19, kAgeMax = 85, kAgePeak = 40;
constexpr double kBmiMean = 24.0, kBmiSigma = 3.0;
constexpr std::int64_t kBmiMinDeci = 120, kBmiMaxDeci = 359;

int triangular_age(Rng& rng) {
    double u = rng.unit();
    double a = kAgeMin, b = kAgeMax, c = kAgePeak;
    double fc = (c - a) / (b - a);
    double x = u < fc ? a + std::sqrt(u * (b - a) * (c - a))
                      : b - std::sqrt((1.0 - u) * (b - a) * (b - c));
    int age = static_cast<int>(x);
    return std::clamp(age, kAgeMin, kAgeMax);
}

std::int64_t normal_bmi_deci(Rng& rng) {
    double u1 = rng.unit(), u2 = rng.unit();
    if (u1 < 1e-12) u1 = 1e-12;
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    auto deci = static_cast<std::int64_t>(std::llround((kBmiMean + kBmiSigma * z) * 10.0));
    return std::clamp(deci, kBmiMinDeci, kBmiMaxDeci);
}

struct ZipfPins {
    std::vector<std::int64_t> pool; // sorted raw values
    std::vector<std::size_t> by_rank; // rank -> pool index
    std::vector<double> cdf;

    explicit ZipfPins(std::uint64_t seed) : pool(pin_pool(seed)) {
        by_rank.resize(pool.size());
        std::iota(by_rank.begin(), by_rank.end(), std::size_t{0});
        Rng rng(seed ^ 0x5a5a5a5a5a5a5a5aULL);
        for (std::size_t i = by_rank.size(); i > 1; --i)
            std::swap(by_rank[i - 1], by_rank[rng.below(i)]);
        cdf.resize(pool.size());
        double sum = 0;
        for (std::size_t r = 0; r < pool.size(); ++r) {
            sum += 1.0 / std::pow(static_cast<double>(r + 1), 1.2);
            cdf[r] = sum;
        }
        for (double& v : cdf) v /= sum;
    }

    std::int64_t draw(Rng& rng) const {
        double u = rng.unit();
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        std::size_t rank = static_cast<std::size_t>(it - cdf.begin());
        if (rank >= pool.size()) rank = pool.size() - 1;
        return pool[by_rank[rank]];
    }
};

std::string format_bmi(std::int64_t deci) {
    return std::to_string(deci / 10) + "." + std::to_string(deci % 10);
}

} // namespace

std::vector<std::int64_t> pin_pool(std::uint64_t seed) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(kPinSpan));
    std::iota(all.begin(), all.end(), kPinBase);
    Rng rng(seed ^ 0xc0ffee1234567890ULL);
    for (std::size_t i = all.size(); i > 1; --i)
        std::swap(all[i - 1], all[rng.below(i)]);
    all.resize(kPinPoolSize);
    std::sort(all.begin(), all.end());
    return all;
}

Chunk generate_chunk(const GeneratorRecipe& recipe, std::uint64_t chunk_index) {
    if (chunk_index >= recipe.num_chunks) throw Error("chunk index out of range");
    ZipfPins pins(recipe.seed);
    Rng rng(recipe.seed * 0x9e3779b97f4a7c15ULL + chunk_index + 1);

    Chunk chunk;
    chunk.index = static_cast<std::size_t>(chunk_index);
    char name[32];
    std::snprintf(name, sizeof name, "chunk_%03llu", static_cast<unsigned long long>(chunk_index));
    chunk.name = name;
    chunk.header = {"Patient ID", "Name",    "Address", "Blood Group",     "Profession",
                    "Age",        "BMI",     "PIN Code", "Health Condition"};
    chunk.rows.reserve(recipe.rows_per_chunk);

    for (std::uint64_t r = 0; r < recipe.rows_per_chunk; ++r) {
        std::uint64_t global = chunk_index * recipe.rows_per_chunk + r;

        char pid[32];
        std::snprintf(pid, sizeof pid, "P%06llu-%04llu-%llu",
                      static_cast<unsigned long long>(global + 1),
                      static_cast<unsigned long long>(rng.below(10000)),
                      static_cast<unsigned long long>(rng.below(9) + 1));

        std::string patient_name = std::string(kFirstNames[rng.below(kFirstNames.size())]) + " " +
                                   kLastNames[rng.below(kLastNames.size())];
        std::string address = std::to_string(rng.below(400) + 1) + ", " +
                              kStreets[rng.below(kStreets.size())];

        const auto& group = kProfessions[rng.below(kProfessions.size())];
        std::string profession = group.members[rng.below(group.members.size())];

        // the first |pool| records walk the whole pool so every full
        // generation of >= 1347 rows observes exactly 1347 distinct codes
        std::int64_t pin = global < kPinPoolSize
                               ? pins.pool[pins.by_rank[static_cast<std::size_t>(global)]]
                               : pins.draw(rng);

        chunk.rows.push_back({pid,
                              patient_name,
                              address,
                              kBloodGroups[rng.below(kBloodGroups.size())],
                              profession,
                              std::to_string(triangular_age(rng)),
                              format_bmi(normal_bmi_deci(rng)),
                              std::to_string(pin),
                              kConditions[rng.below(kConditions.size())]});
    }
    return chunk;
}

std::vector<Chunk> generate_chunks(const GeneratorRecipe& recipe) {
    std::vector<Chunk> chunks;
    chunks.reserve(recipe.num_chunks);
    for (std::uint64_t i = 0; i < recipe.num_chunks; ++i)
        chunks.push_back(generate_chunk(recipe, i));
    return chunks;
}

std::vector<std::filesystem::path> generate(const GeneratorRecipe& recipe,
                                            const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> files;
    for (std::uint64_t i = 0; i < recipe.num_chunks; ++i) {
        Chunk chunk = generate_chunk(recipe, i);
        auto path = out_dir / (chunk.name + ".csv");
        write_csv(path, chunk.header, chunk.rows);
        files.push_back(path);
    }
    std::ofstream sidecar(out_dir / "recipe.txt");
    sidecar << "seed=" << recipe.seed << "\nrows_per_chunk=" << recipe.rows_per_chunk
            << "\nnum_chunks=" << recipe.num_chunks << '\n';
    return files;
}

DatasetSchema example_schema() {
    DatasetSchema schema;
    schema.columns = {{"Patient ID", AttributeKind::DirectIdentifier},
                      {"Name", AttributeKind::DirectIdentifier},
                      {"Address", AttributeKind::DirectIdentifier},
                      {"Blood Group", AttributeKind::CategoricalQid},
                      {"Profession", AttributeKind::CategoricalQid},
                      {"Age", AttributeKind::NumericalQid},
                      {"BMI", AttributeKind::NumericalQid},
                      {"PIN Code", AttributeKind::NumericalQid},
                      {"Health Condition", AttributeKind::Sensitive}};
    schema.chunk_rows = 1000;
    schema.record_bytes = 0; // auto

    QidSpec blood;
    blood.name = "Blood Group";
    blood.kind = AttributeKind::CategoricalQid;
    blood.importance_rank = 3;
    CategoricalHierarchy bh;
    bh.levels.resize(3);
    for (const char* bg : kBloodGroups) {
        std::string value(bg);
        bh.levels[0][value] = value;
        bh.levels[1][value] = value.substr(0, value.size() - 1); // strip rhesus sign
        bh.levels[2][value] = "*";
    }
    bh.compile();
    blood.hierarchy = std::move(bh);

    QidSpec prof;
    prof.name = "Profession";
    prof.kind = AttributeKind::CategoricalQid;
    prof.importance_rank = 2;
    CategoricalHierarchy ph;
    ph.levels.resize(4);
    for (const auto& group : kProfessions) {
        for (const char* member : group.members) {
            ph.levels[0][member] = member;
            ph.levels[1][member] = group.domain;
            ph.levels[2][member] = group.sector;
            ph.levels[3][member] = "*";
        }
    }
    ph.compile();
    prof.hierarchy = std::move(ph);

    QidSpec age;
    age.name = "Age";
    age.kind = AttributeKind::NumericalQid;
    age.importance_rank = 1;
    age.ladder = NumericalLadder{1, kAgeMin, kAgeMax, {1, 2, 4, 8, 16, 32, 64, 67}, 0};

    QidSpec bmi;
    bmi.name = "BMI";
    bmi.kind = AttributeKind::NumericalQid;
    bmi.importance_rank = 5;
    bmi.ladder = NumericalLadder{10, kBmiMinDeci, kBmiMaxDeci, {1, 10, 20, 40, 80, 240}, 0};

    QidSpec pin;
    pin.name = "PIN Code";
    pin.kind = AttributeKind::NumericalQid;
    pin.importance_rank = 4;
    pin.encode = true;
    pin.ladder = NumericalLadder{
        1, kPinBase, kPinBase + kPinSpan - 1,
        {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 1347}, 0};

    schema.qids = {std::move(blood), std::move(prof), std::move(age), std::move(bmi),
                   std::move(pin)};
    return schema;
}

} // namespace skald
