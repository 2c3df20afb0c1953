// End-to-end tests for the diffuni command line tool. The binary under test
// is located through the DIFFUNI_CLI environment variable, which the build
// sets to the freshly compiled executable. Each case spawns the real process
// and inspects exit status plus stdout, so these tests exercise argument
// parsing, output formatting, and the exit code contract exactly as a user
// would see them.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "diffuni/field.hpp"
#include "diffuni/lmap.hpp"
#include "diffuni/poly.hpp"
#include "diffuni/regularity.hpp"
#include "diffuni/secdiff.hpp"

using nlohmann::json;
using namespace diffuni;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

const char* cli_path() {
    const char* exe = std::getenv("DIFFUNI_CLI");
    REQUIRE_MESSAGE(exe != nullptr, "DIFFUNI_CLI must point at the built binary");
    return exe;
}

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + cli_path() + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json parse_payload(const RunResult& r) {
    REQUIRE(r.code == 0);
    REQUIRE(!r.out.empty());
    REQUIRE(r.out.back() == '\n');
    return json::parse(r.out);
}

// Timing is the one field excluded from determinism guarantees.
std::string strip_timing(std::string s) {
    static const std::regex re("\"elapsed_ms\":[0-9]+,?");
    return std::regex_replace(s, re, "");
}

}  // namespace

TEST_CASE("delta2 monomial headline value") {
    auto r = run_cli("delta2 --n 6 --monomial-exp 62");
    auto j = parse_payload(r);
    CHECK(j["command"] == "delta2");
    CHECK(j["n"] == 6);
    CHECK(j["delta2"] == 8);
    CHECK(j["degenerate"] == false);
    REQUIRE(j.contains("witness"));
    auto w = j["witness"];
    auto f = make_field(6);
    std::uint64_t al = parse_hex(w["alpha"].get<std::string>());
    std::uint64_t ap = parse_hex(w["alpha_prime"].get<std::string>());
    std::uint64_t be = parse_hex(w["beta"].get<std::string>());
    // The witness must actually achieve the value on the inversion monomial.
    auto pair = make_derivative_pair(*f, al, ap);
    auto [cnt, first_beta] = delta2_for_pair(poly_monomial(f, 1, f->order() - 2), pair);
    CHECK(cnt == 8);
    (void)first_beta;
    CHECK(be < f->order());
}

TEST_CASE("delta on inversion with verify") {
    auto r = run_cli("delta --n 5 --monomial-exp 30 --verify");
    auto j = parse_payload(r);
    CHECK(j["delta"] == 2);
    CHECK(j["degenerate"] == false);
    REQUIRE(j.contains("histogram"));
    // Histogram rows are [solution_count, number_of_cells]; the cell count
    // over nonzero alpha and all beta is (q-1)*q split across rows.
    std::uint64_t cells = 0, mass = 0;
    for (const auto& row : j["histogram"]) {
        REQUIRE(row.size() == 2);
        cells += row[1].get<std::uint64_t>();
        mass += row[0].get<std::uint64_t>() * row[1].get<std::uint64_t>();
    }
    CHECK(mass == 31ull * 32ull);
    CHECK(cells <= 31ull * 32ull);
    auto even = run_cli("delta --n 4 --monomial-exp 14");
    CHECK(parse_payload(even)["delta"] == 4);
}

TEST_CASE("lmap identity check and degree bound") {
    auto r = run_cli("lmap --n 8 --poly 1,0,0,0,0,0,0,1 --alpha 02 --alpha-prime 03 --verify");
    auto j = parse_payload(r);
    CHECK(j["command"] == "lmap");
    CHECK(j["m"] == 7);
    CHECK(j["degree_bound"] == 1);
    CHECK(j["identity_checked"] == true);
    REQUIRE(j.contains("g"));
    CHECK(j["g"].size() <= 2);
    CHECK(!j["b0"].is_null());
    CHECK(!j["b1_over_b0"].is_null());

    // Cross-check g against the library on the same inputs.
    auto f = make_field(8);
    auto p = make_derivative_pair(*f, 2, 3);
    auto res = compute_L(Poly(f, {1, 0, 0, 0, 0, 0, 0, 1}), p);
    std::vector<std::string> want;
    for (int i = 0; i <= res.g.degree(); ++i) want.push_back(to_hex(res.g.coeff(i)));
    REQUIRE(j["g"].size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(j["g"][i] == want[i]);
}

TEST_CASE("lmap below quartic composition degree reports null bound") {
    auto r = run_cli("lmap --n 6 --poly 1,1,0,0,1 --alpha 1 --alpha-prime 2");
    auto j = parse_payload(r);
    CHECK(j["m"] == 4);
    CHECK(j["degree_bound"].is_null());
    CHECK(j["identity_checked"] == true);
}

TEST_CASE("morse single verdicts") {
    auto good = run_cli("morse --n 4 --poly 1,1,0,1 --verify");
    auto jg = parse_payload(good);
    CHECK(jg["mode"] == "single");
    CHECK(jg["morse"] == true);
    CHECK(jg["failed_condition"].is_null());

    // Even degree violates the odd degree condition first.
    auto bad = run_cli("morse --n 4 --poly 0,0,0,0,1 --verify");
    auto jb = parse_payload(bad);
    CHECK(jb["morse"] == false);
    CHECK(jb["failed_condition"] == "C");
}

TEST_CASE("morse sampling fraction format") {
    auto r = run_cli("morse --n 6 --m 15 --alpha 2 --alpha-prime 3 --samples 50 --seed 7");
    auto j = parse_payload(r);
    CHECK(j["mode"] == "sample");
    CHECK(j["samples"] == 50);
    std::uint64_t nm = j["nonmorse"].get<std::uint64_t>();
    std::uint64_t dd = j["degree_drop"].get<std::uint64_t>();
    CHECK(nm + dd <= 50);
    std::string frac = j["fraction"].get<std::string>();
    static const std::regex rat("^(0|[0-9]+(/[0-9]+)?)$");
    CHECK(std::regex_match(frac, rat));
}

TEST_CASE("regularity membership against library") {
    auto f = make_field(5);
    auto pair = make_derivative_pair(*f, 2, 3);
    // Find one member and one non-member of the image of T.
    std::uint64_t member = 0, outsider = 0;
    bool have_m = false, have_o = false;
    for (std::uint64_t c = 1; c < f->order(); ++c) {
        if (in_image_T(*f, pair, c) && !have_m) { member = c; have_m = true; }
        if (!in_image_T(*f, pair, c) && !have_o) { outsider = c; have_o = true; }
        if (have_m && have_o) break;
    }
    REQUIRE(have_m);
    REQUIRE(have_o);

    auto rm = run_cli("regularity --n 5 --alpha 2 --alpha-prime 3 --beta " + to_hex(member) + " --verify");
    auto jm = parse_payload(rm);
    CHECK(jm["mode"] == "membership");
    CHECK(jm["in_image"] == true);
    REQUIRE(jm["solutions"].size() == 4);
    auto tp = t_poly(f, pair);
    for (const auto& s : jm["solutions"])
        CHECK(poly_eval(tp, parse_hex(s.get<std::string>())) == member);

    auto ro = run_cli("regularity --n 5 --alpha 2 --alpha-prime 3 --beta " + to_hex(outsider));
    auto jo = parse_payload(ro);
    CHECK(jo["in_image"] == false);
    CHECK(jo["solutions"].empty());
}

TEST_CASE("regularity hypothesis mode") {
    auto r = run_cli("regularity --n 8 --poly 1,0,0,0,0,0,0,3 --alpha 2 --alpha-prime 5 --verify");
    auto j = parse_payload(r);
    CHECK(j["mode"] == "hypothesis");
    REQUIRE(j.contains("holds"));
    auto f = make_field(8);
    auto p = make_derivative_pair(*f, 2, 5);
    std::vector<std::uint64_t> c{1, 0, 0, 0, 0, 0, 0, 3};
    bool want = regular_hypothesis_holds(Poly(f, c), p);
    CHECK(j["holds"] == want);
}

TEST_CASE("density CSV output") {
    auto r = run_cli("density --m 7 --n 10 --samples 100 --seed 1");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row, extra;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, row));
    CHECK(!std::getline(lines, extra));
    CHECK(header == "m,n,samples,seed,hits,degenerate,fraction");
    CHECK(row.rfind("7,10,100,1,", 0) == 0);
    double frac = std::stod(row.substr(row.rfind(',') + 1));
    CHECK(frac >= 0.0);
    CHECK(frac <= 1.0);
}

TEST_CASE("density JSON output with verify") {
    auto r = run_cli("density --m 7 --n 5 --samples 40 --seed 11 --format json --verify");
    auto j = parse_payload(r);
    CHECK(j["m"] == 7);
    CHECK(j["n"] == 5);
    CHECK(j["samples"] == 40);
    CHECK(j["hits"].get<std::uint64_t>() + j["degenerate"].get<std::uint64_t>() <= 40);
}

TEST_CASE("inversion-table rows and CSV format") {
    auto r = run_cli("inversion-table --n 8 --verify");
    auto j = parse_payload(r);
    std::vector<std::pair<int, int>> want{{2, 4}, {3, 8}, {4, 4}, {5, 4}, {6, 8}, {7, 8}, {8, 8}};
    REQUIRE(j["rows"].size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(j["rows"][i][0] == want[i].first);
        CHECK(j["rows"][i][1] == want[i].second);
    }

    auto csv = run_cli("inversion-table --n 4 --format csv");
    REQUIRE(csv.code == 0);
    CHECK(csv.out == "n,delta2\n2,4\n3,8\n4,4\n");
}

TEST_CASE("curve counts at pinned sizes") {
    auto r3 = run_cli("curve --n 3 --verify");
    auto j3 = parse_payload(r3);
    CHECK(j3["count_d"] == 24);
    CHECK(j3["count_sols"] == 6);
    CHECK(j3["count_c"] == 24);
    CHECK(j3["count_projective"] == 24);

    auto r5 = run_cli("curve --n 5 --verify");
    auto j5 = parse_payload(r5);
    CHECK(j5["count_sols"] == 0);
    CHECK(j5["count_projective"] == 0);
}

TEST_CASE("chebotarev bound and threshold modes") {
    auto r = run_cli("chebotarev --n 20 --d-k 1 --d-lk 1 --g-k 0 --g-l 0 --s 1 --verify");
    auto j = parse_payload(r);
    CHECK(j["bound"] == "1046462");
    CHECK(j["positive"] == true);
    CHECK(j["q"] == "1048576");

    auto neg = run_cli("chebotarev --n 8 --d-k 2 --d-lk 3 --g-k 1 --g-l 4 --s 2 --verify");
    auto jn = parse_payload(neg);
    CHECK(jn["bound"] == "-40");
    CHECK(jn["positive"] == false);

    auto th = run_cli("chebotarev --d-k 3 --d-lk 6 --g-k 2 --g-l 40 --s 1 --verify");
    auto jt = parse_payload(th);
    CHECK(jt["threshold_n"] == 14);
}

TEST_CASE("covering-family sizes") {
    auto r = run_cli("covering-family --n 8 --epsilon 3/4 --verify");
    auto j = parse_payload(r);
    CHECK(j["k"] == 2);
    CHECK(j["pairs"].size() == 2);
    for (const auto& p : j["pairs"]) {
        std::uint64_t al = parse_hex(p["alpha"].get<std::string>());
        std::uint64_t ap = parse_hex(p["alpha_prime"].get<std::string>());
        CHECK(al != 0);
        CHECK(ap != 0);
        CHECK(al != ap);
    }
    auto half = run_cli("covering-family --n 12 --epsilon 1/2 --verify");
    CHECK(parse_payload(half)["k"] == 3);
}

TEST_CASE("exit code contract") {
    CHECK(run_cli("delta2 --n 6 --poly zz,1").code == 2);            // bad hex
    CHECK(run_cli("delta2 --n 99 --monomial-exp 3").code == 2);      // n out of range
    CHECK(run_cli("nosuch --n 4").code == 2);                        // unknown command
    CHECK(run_cli("delta --n 4 --monomial-exp 3 --format csv").code == 2);  // unsupported format
    CHECK(run_cli("delta2 --n 6").code == 2);                        // missing input poly
    CHECK(run_cli("delta2 --n 6 --poly 1,1 --monomial-exp 3").code == 2);   // both input forms
    CHECK(run_cli("morse --n 6 --m 15 --samples 10").code == 2);     // sampling without pair
    CHECK(run_cli("regularity --n 5 --alpha 2 --alpha-prime 3").code == 2); // neither beta nor poly
    CHECK(run_cli("lmap --n 5 --poly 1,0,0,0,0,0,0,1 --alpha 0 --alpha-prime 1").code == 2); // zero alpha
    CHECK(run_cli("").code == 2);                                    // no subcommand
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("machine output stays off stdout on errors") {
    auto r = run_cli("delta2 --n 6 --poly zz,1");
    CHECK(r.code == 2);
    CHECK(r.out.empty());
}

TEST_CASE("output file writing") {
    std::string path = "/tmp/diffuni_cli_out_test.json";
    std::remove(path.c_str());
    auto r = run_cli("delta2 --n 5 --monomial-exp 30 --out " + path);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto j = json::parse(content);
    CHECK(j["delta2"] == 4);
    std::remove(path.c_str());
}

TEST_CASE("byte-identical reruns after stripping timing") {
    std::vector<std::string> cmds{
        "delta2 --n 6 --monomial-exp 62",
        "delta --n 4 --monomial-exp 14",
        "lmap --n 8 --poly 1,0,0,0,0,0,0,1 --alpha 2 --alpha-prime 3",
        "morse --n 6 --m 15 --alpha 2 --alpha-prime 3 --samples 50 --seed 7",
        "regularity --n 5 --alpha 2 --alpha-prime 3 --beta 9",
        "density --m 7 --n 6 --samples 60 --seed 5",
        "inversion-table --n 6",
        "curve --n 4",
        "chebotarev --n 12 --d-k 1 --d-lk 2 --g-k 0 --g-l 3 --s 1",
        "covering-family --n 8 --epsilon 3/4",
    };
    for (const auto& c : cmds) {
        CAPTURE(c);
        auto a = run_cli(c);
        auto b = run_cli(c);
        REQUIRE(a.code == 0);
        REQUIRE(b.code == 0);
        CHECK(strip_timing(a.out) == strip_timing(b.out));
    }
}

TEST_CASE("thread count does not change results") {
    std::vector<std::string> cmds{
        "delta2 --n 7 --monomial-exp 126",
        "morse --n 6 --m 15 --alpha 2 --alpha-prime 3 --samples 40 --seed 9",
        "density --m 8 --n 6 --samples 50 --seed 3",
        "inversion-table --n 9",
    };
    for (const auto& c : cmds) {
        CAPTURE(c);
        auto one = run_cli(c + " --threads 1");
        auto eight = run_cli(c + " --threads 8");
        REQUIRE(one.code == 0);
        REQUIRE(eight.code == 0);
        CHECK(strip_timing(one.out) == strip_timing(eight.out));
    }
}

TEST_CASE("custom reduction polynomial is honored") {
    // x^4 + x + 1 (the default) and x^4 + x^3 + 1 give isomorphic fields, so
    // the inversion monomial must report the same uniformity in both.
    auto def = run_cli("delta2 --n 4 --monomial-exp 14");
    auto alt = run_cli("delta2 --n 4 --reduction 19 --poly 0,0,0,0,0,0,0,0,0,0,0,0,0,0,1");
    auto jd = parse_payload(def);
    auto ja = parse_payload(alt);
    CHECK(jd["delta2"] == 4);
    CHECK(ja["delta2"] == 4);

    // A reduction that is not irreducible must be rejected up front.
    CHECK(run_cli("delta2 --n 4 --reduction 18 --poly 0,0,0,1").code == 2);
}

TEST_CASE("verify flag catches nothing on healthy runs across commands") {
    std::vector<std::string> cmds{
        "delta --n 4 --monomial-exp 14 --verify",
        "delta2 --n 5 --monomial-exp 30 --verify",
        "lmap --n 6 --poly 1,2,0,0,0,0,0,3 --alpha 1 --alpha-prime 2 --verify",
        "morse --n 4 --poly 1,1,0,1 --verify",
        "morse --n 5 --m 15 --alpha 2 --alpha-prime 3 --samples 30 --seed 2 --verify",
        "regularity --n 5 --alpha 2 --alpha-prime 3 --beta 9 --verify",
        "density --m 7 --n 5 --samples 30 --seed 4 --verify",
        "inversion-table --n 7 --verify",
        "curve --n 6 --verify",
        "chebotarev --n 16 --d-k 1 --d-lk 1 --g-k 0 --g-l 0 --s 1 --verify",
        "covering-family --n 10 --epsilon 2/3 --verify",
    };
    for (const auto& c : cmds) {
        CAPTURE(c);
        CHECK(run_cli(c).code == 0);
    }
}
