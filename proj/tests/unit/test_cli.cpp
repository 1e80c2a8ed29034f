#include "oracles/closed_form.hpp"
#include "support.hpp"

#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bvtp;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "bvtp");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

/// Data rows of a CSV document (manifest and header dropped), split on commas.
std::vector<std::vector<std::string>> csv_rows(const std::string& text, std::vector<std::string>* header = nullptr) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!seen_header) {
            seen_header = true;
            if (header) *header = cells;
            continue;
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string manifest_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::string strip_duration(std::string text) {
    const auto pos = text.find("\"duration_s\"");
    if (pos == std::string::npos) return text;
    const auto end = text.find('}', pos);
    text.erase(pos, end - pos);
    return text;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / ("bvtp_test_" + name);
    std::ofstream(path) << contents;
    return path;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
    return s;
}

const std::string p0_file = test_support::fixture_path("p0.bvtp");
const std::string p1_file = test_support::fixture_path("p1.bvtp");
const std::string p2_file = test_support::fixture_path("p2.bvtp");

}  // namespace

TEST_CASE("validate prints kappas and weights") {
    const auto r = run({"validate", p0_file});
    CHECK(r.code == 0);
    CHECK(r.out.find("kappa1=1") != std::string::npos);
    CHECK(r.out.find("kappa2=1") != std::string::npos);
    const auto r2 = run({"validate", p2_file});
    CHECK(r2.code == 0);
    CHECK(r2.out.find("piece 2: V=0.25") != std::string::npos);
    CHECK(r2.out.find("theta12=1") != std::string::npos);
}

TEST_CASE("validate reports a flipped row at interface 1") {
    const std::string text = replace(read_file(p2_file), "row2 = [0, 1, 0, -2]", "row2 = [0, -1, 0, 2]");
    const auto path = temp_file("flipped.bvtp", text);
    const auto r = run({"validate", path.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("ThetaDegenerate") != std::string::npos);
    CHECK(r.err.find("interface 1") != std::string::npos);
}

TEST_CASE("validate names a missing key") {
    const std::string text = replace(read_file(p0_file), "gamma4 = -1", "");
    const auto r = run({"validate", temp_file("missing.bvtp", text).string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("gamma4") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"eigs"}).code == 1);
    CHECK(run({"eigs", p0_file, "--format", "xml"}).code == 1);
    CHECK(run({"solve", p0_file, "--lambda", "-1", "--f", "sin:1"}).code == 1);
    CHECK(run({"eigs", p0_file, "--window", "5", "1"}).code == 1);
    CHECK(run({"validate", "/no/such/file.bvtp"}).code == 1);
}

TEST_CASE("eigs on P0 matches the closed-form roots") {
    std::vector<std::string> header;
    const auto r = run({"eigs", p0_file, "--window", "0", "150", "--quiet"});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    const auto rows = csv_rows(r.out, &header);
    CHECK(header == std::vector<std::string>{"index", "lambda", "abs_omega", "bracket_lo", "bracket_hi", "iterations"});
    const auto ref = oracle::scan_roots(oracle::p0_omega, 0, 150, 3000);
    REQUIRE(rows.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
        CHECK(std::stoul(rows[k][0]) == k + 1);
        CHECK(std::abs(std::stod(rows[k][1]) - ref[k]) < 1e-9 * std::max(1.0, ref[k]));
    }
}

TEST_CASE("eigs on P1 reproduces P0 apart from the manifest") {
    const auto a = run({"eigs", p0_file, "--window", "0", "150", "--quiet"});
    const auto b = run({"eigs", p1_file, "--window", "0", "150", "--quiet"});
    const auto ra = csv_rows(a.out);
    const auto rb = csv_rows(b.out);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t k = 0; k < ra.size(); ++k) {
        CHECK(ra[k][0] == rb[k][0]);
        CHECK(std::abs(std::stod(ra[k][1]) - std::stod(rb[k][1])) < 1e-9 * std::stod(ra[k][1]));
        CHECK(ra[k][3] == rb[k][3]);
        CHECK(ra[k][4] == rb[k][4]);
    }
}

TEST_CASE("eigs on P2 matches the oracle") {
    const auto r = run({"eigs", p2_file, "--window", "-5", "100", "--quiet"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    const auto ref = oracle::scan_roots([](double l) { return oracle::p2_omega(l).real(); }, -5, 100, 4000);
    REQUIRE(rows.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(std::stod(rows[k][1]) - ref[k]) < 1e-8);
}

TEST_CASE("output is deterministic") {
    const auto a = run({"eigs", p2_file, "--window", "-5", "100", "--quiet"});
    const auto b = run({"eigs", p2_file, "--window", "-5", "100", "--quiet"});
    CHECK(strip_duration(a.out) == strip_duration(b.out));
    CHECK(a.out.substr(a.out.find('\n')) == b.out.substr(b.out.find('\n')));
}

TEST_CASE("manifest records the run") {
    const auto r = run({"eigs", p0_file, "--window", "0", "50", "--grid", "700", "--quiet"});
    const std::string line = manifest_line(r.out);
    REQUIRE(line.rfind("# manifest: ", 0) == 0);
    const auto m = nlohmann::json::parse(line.substr(12));
    CHECK(m["tool"] == "bvtp");
    CHECK(m["command"] == "eigs");
    CHECK(m["problem"] == p0_file);
    CHECK(m["options"]["grid"] == 700);
    CHECK(m["options"]["window"][1] == 50);
    CHECK(m["format"] == "csv");
    CHECK(m["duration_s"].is_number());
    CHECK(m.contains("version"));
}

TEST_CASE("json lines mirror the CSV columns") {
    const auto csv = run({"eigs", p0_file, "--window", "0", "50", "--quiet"});
    const auto jl = run({"eigs", p0_file, "--window", "0", "50", "--quiet", "--format", "jsonl"});
    REQUIRE(jl.code == 0);
    std::istringstream in(jl.out);
    std::string line;
    std::getline(in, line);
    CHECK(nlohmann::json::parse(line).contains("manifest"));
    const auto rows = csv_rows(csv.out);
    std::size_t k = 0;
    while (std::getline(in, line)) {
        const auto obj = nlohmann::json::parse(line);
        REQUIRE(k < rows.size());
        CHECK(obj["index"] == std::stoi(rows[k][0]));
        CHECK(obj["lambda"].get<double>() == std::stod(rows[k][1]));
        ++k;
    }
    CHECK(k == rows.size());
}

TEST_CASE("output file carries the manifest") {
    const auto path = std::filesystem::temp_directory_path() / "bvtp_test_eigs.csv";
    const auto r = run({"eigs", p0_file, "--window", "0", "50", "--quiet", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const std::string text = read_file(path);
    CHECK(text.rfind("# manifest: ", 0) == 0);
    CHECK(csv_rows(text).size() == 3);
}

TEST_CASE("charfn samples omega") {
    const auto r = run({"charfn", p0_file, "--window", "0", "4", "--grid", "5", "--quiet"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) {
        const double lambda = std::stod(row[0]);
        CHECK(std::abs(std::stod(row[1]) - oracle::p0_omega(lambda)) < 1e-9 * std::max(1.0, std::abs(oracle::p0_omega(lambda))));
    }
}

TEST_CASE("green grid is weighted-symmetric") {
    for (const auto& file : {p0_file, p2_file}) {
        const auto r = run({"green", file, "--lambda", "-1", "--grid", "21", "--quiet"});
        REQUIRE(r.code == 0);
        std::vector<std::string> header;
        const auto rows = csv_rows(r.out, &header);
        REQUIRE(rows.size() == 441);
        const auto col = [&](const std::string& name) {
            return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
        };
        const std::size_t wr = col("weighted_re");
        const std::size_t wi = col("weighted_im");
        REQUIRE(wr < header.size());
        for (std::size_t i = 0; i < 21; ++i) {
            for (std::size_t j = 0; j < 21; ++j) {
                const auto& a = rows[i * 21 + j];
                const auto& b = rows[j * 21 + i];
                const Complex va(std::stod(a[wr]), std::stod(a[wi]));
                const Complex vb(std::stod(b[wr]), std::stod(b[wi]));
                CHECK(std::abs(va - vb) <= 1e-8 * std::max(std::abs(va), 1e-12));
            }
        }
    }
}

TEST_CASE("solve reports residuals and rejects eigenvalues") {
    const auto r = run({"solve", p2_file, "--lambda", "-3", "--f", "const:1", "--quiet"});
    REQUIRE(r.code == 0);
    const auto m = nlohmann::json::parse(manifest_line(r.out).substr(12));
    CHECK(m["summary"]["residual_ode"].get<double>() < 1e-6);
    CHECK(m["summary"]["residual_trans"].get<double>() < 1e-7);
    const auto piecewise = run({"solve", p2_file, "--lambda", "-3,1", "--f", "poly:1,2;0,0,1", "--quiet"});
    CHECK(piecewise.code == 0);

    const double root = oracle::bisect(oracle::p0_omega, 1.0, 1.5);
    std::ostringstream lambda;
    lambda.precision(17);
    lambda << root;
    const auto near = run({"solve", p0_file, "--lambda", lambda.str(), "--f", "const:1", "--quiet"});
    CHECK(near.code == 2);
    CHECK(near.err.find("NearEigenvalue") != std::string::npos);
}

TEST_CASE("eigenfunction dump is normalized output") {
    const auto r = run({"eigenfunction", p2_file, "--index", "2", "--points", "11", "--quiet"});
    REQUIRE(r.code == 0);
    CHECK(csv_rows(r.out).size() == 22);
    CHECK(run({"eigenfunction", p2_file, "--index", "0", "--quiet"}).code == 1);
}

TEST_CASE("expand residual column decreases") {
    const auto r = run({"expand", p0_file, "--n", "10", "--f", "poly:0,1,-1", "--quiet"});
    REQUIRE(r.code == 0);
    std::vector<std::string> header;
    const auto rows = csv_rows(r.out, &header);
    REQUIRE(rows.size() == 10);
    CHECK(header.back() == "residual");
    std::vector<double> res;
    for (const auto& row : rows) res.push_back(std::stod(row.back()));
    for (std::size_t k = 1; k < res.size(); ++k) CHECK(res[k] <= res[k - 1] + 1e-12);
    CHECK(res[9] < res[4]);
    CHECK(res[4] < res[0]);
}

TEST_CASE("verify passes on the shipped fixtures") {
    for (const auto& file : {p0_file, p1_file, p2_file}) {
        const auto r = run({"verify", file, "--quiet", "--format", "jsonl"});
        CHECK(r.code == 0);
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        std::size_t checks = 0;
        while (std::getline(in, line)) {
            const auto obj = nlohmann::json::parse(line);
            CHECK_MESSAGE(obj["passed"].get<bool>(), obj.dump());
            ++checks;
        }
        CHECK(checks >= 10);
    }
}
