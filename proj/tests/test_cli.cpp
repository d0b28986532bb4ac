#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "grext/errors.hpp"

using namespace grext;
using namespace grext::cli;

namespace {

Report exec(const std::string& command, const Json& input, std::uint64_t seed = 1) {
    JobConfig job;
    job.command = command;
    job.seed = seed;
    return execute(job, input);
}

Json group(std::vector<int> cyclic) {
    return {{"builder", "group"}, {"p", 3}, {"cyclic", cyclic}};
}

Json z27_chain(int n) {
    return {{"algebra", group({27})}, {"chain", Json::array({Json::array({{3}}), Json::array({{9}}), Json::array()})}, {"n", n}};
}

std::filesystem::path temp_file(const std::string& name, const Json& content) {
    auto path = std::filesystem::temp_directory_path() / ("grext_cli_" + name);
    std::ofstream(path) << content.dump();
    return path;
}

}  // namespace

TEST_CASE("ext on F_3[Z/3]") {
    auto rep = exec("ext", {{"algebra", group({3})}, {"n_max", 3}});
    CHECK(rep.status == Status::Ok);
    CHECK(rep.result["dims"] == Json::array({1, 1, 1}));
    auto j = rep.to_json(1);
    CHECK(j["schema"] == "grext/1");
    CHECK(j["anchor"] == "App-bar");
    CHECK(render(rep.tables.at(0)).find("Ext^n_A(k, M)") != std::string::npos);
}

TEST_CASE("koszul on the symmetric algebra in two variables") {
    auto rep = exec("koszul", {{"algebra", {{"builder", "polynomial"}, {"p", 3}, {"degrees", {1, 1}}, {"truncation", 4}}}});
    CHECK(rep.result["koszul"] == true);
    CHECK(rep.result["betti"] == Json::array({1, 2, 1, 0}));
    CHECK(rep.to_json(1)["anchor"] == "Thm-koz");
    auto cube = exec("koszul", {{"algebra", {{"builder", "truncated"}, {"p", 3}, {"n", 3}}}});
    CHECK(cube.result["koszul"] == false);
    CHECK(exit_code(cube) == 0);
}

TEST_CASE("validate names the violated axiom") {
    Json bad = {{"p", 3},
                {"basis", {"1", "x"}},
                {"unit", 0},
                {"mul", {{0, 0, {{0, 1}}}, {0, 1, {{1, 1}}}, {1, 0, {{1, 1}}}}},
                {"aug", {1, 1}},
                {"weights", {0, 1}}};
    auto path = temp_file("bad.json", {{"algebra", bad}});
    JobConfig job;
    job.command = "validate";
    job.inputs = {path.string()};
    std::ostringstream out, err;
    CHECK(run(job, out, err) == 1);
    CHECK(err.str().find("augmentation axiom") != std::string::npos);

    bad["aug"] = {1, 0};
    auto ok = exec("validate", {{"algebra", bad}});
    CHECK(ok.status == Status::Ok);
    CHECK(ok.result["algebra"]["dim"] == 2);

    CHECK_THROWS_WITH_AS(exec("ext", Json::object()), "missing field 'algebra'", InvalidInput);
    CHECK_THROWS_WITH_AS(exec("nonsense", Json::object()), "command: unknown command 'nonsense'", InvalidInput);
    Json wrong = {{"algebra", {{"builder", "group"}, {"p", 3}, {"cyclic", "three"}}}};
    CHECK_THROWS_WITH_AS(exec("ext", wrong), "field 'cyclic': wrong type", InvalidInput);
}

TEST_CASE("resource caps") {
    JobConfig job;
    job.command = "ext";
    job.max_bar_degree = 2;
    CHECK_THROWS_AS(execute(job, {{"algebra", group({3})}, {"n_max", 3}}), ResourceCapExceeded);
    job.max_bar_degree = 4;
    job.max_dim = 5;
    CHECK_THROWS_AS(execute(job, {{"algebra", group({9})}, {"n_max", 3}}), ResourceCapExceeded);
    job.max_dim = 0;
    CHECK_THROWS_AS(execute(job, {{"algebra", group({3})}}), InvalidInput);
}

TEST_CASE("resolution commands") {
    Json a = {{"algebra", {{"builder", "exterior"}, {"p", 3}, {"d", 2}}}, {"n_max", 3}};
    auto mr = exec("minres", a);
    CHECK(mr.status == Status::Ok);
    CHECK(mr.result["minimal"] == true);
    auto b = exec("betti", a);
    // Ext over Λ(e_1, e_2) is polynomial in two variables.
    CHECK(b.result["betti"] == Json::array({1, 2, 3, 4}));
    CHECK(b.result["ext_totals"] == Json::array({1, 2, 3, 4}));
    auto g = exec("gr", {{"algebra", group({9})}, {"n_max", 2}});
    CHECK(g.status == Status::Ok);
    CHECK(g.result["gr_dims"].size() == 9);
}

TEST_CASE("spectral sequence commands") {
    auto pages = exec("ss-pages", {{"algebra", {{"builder", "exterior"}, {"p", 3}, {"d", 2}}}, {"module", "regular"}});
    CHECK(pages.status == Status::Ok);
    CHECK(pages.result["gr_koszul"] == true);
    CHECK(pages.result["band"]["violations"].empty());
    auto book = exec("ss-bookkeeping", {{"algebra", group({3, 3})}});
    CHECK(book.status == Status::Ok);
    CHECK(book.result["e_infinity_totals"] == book.result["ext_dims"]);
    CHECK(book.result["ext_dims"] == Json::array({1, 2}));
}

TEST_CASE("chain commands on F_3[Z/27]") {
    auto r = exec("restrict", z27_chain(1));
    CHECK(r.result["links"].size() == 3);
    CHECK(r.result["links"][0]["target_dim"] == 1);

    auto shift = exec("fil-shift", z27_chain(1));
    CHECK(shift.status == Status::Ok);
    auto shift2 = exec("fil-shift", z27_chain(2));
    CHECK(shift2.status == Status::HypothesisFailed);
    CHECK(exit_code(shift2) == 2);

    auto k1 = exec("koz-cert", z27_chain(1));
    CHECK(exit_code(k1) == 0);
    CHECK(k1.result["certificate"]["verdict"] == "vanishes");
    CHECK(k1.result["certificate"]["m_star"] == 3);
    auto k2 = exec("koz-cert", z27_chain(2));
    CHECK(exit_code(k2) == 2);
    CHECK(k2.result["certificate"]["failed_link"] == 0);

    Json no_group = z27_chain(1);
    no_group["algebra"] = {{"builder", "exterior"}, {"p", 3}, {"d", 1}};
    CHECK_THROWS_AS(exec("koz-cert", no_group), InvalidInput);
}

TEST_CASE("p-adic commands") {
    Json gl2 = {{"instance", {{"family", "gl_n"}, {"p", 3}, {"n", 2}, {"r", 1}, {"R", 4}}}, {"n", 2}};
    auto pv = exec("pval-check", gl2);
    CHECK(pv.status == Status::Ok);
    CHECK(pv.result["graded"]["rank"] == 4);
    CHECK(pv.result["pi_cokernel_zero"] == true);
    CHECK(pv.to_json(1)["anchors"].size() == 3);

    auto k2 = exec("pval-check", {{"instance", {{"family", "gl_n"}, {"r", 2}, {"R", 5}}}});
    CHECK(k2.result["saturated"] == false);
    CHECK(k2.result["pi_cokernel_zero"].is_null());

    auto iw = exec("iwahori-verify", gl2);
    CHECK(iw.status == Status::Ok);
    CHECK(iw.result["conjugation"].size() == 6);

    auto gr = exec("griwa", gl2);
    CHECK(gr.status == Status::Ok);
    for (const auto& c : gr.result["cocharacters"]) CHECK(c["rank_total"] == 4);

    auto ac = exec("achk-cert", gl2);
    CHECK(exit_code(ac) == 0);
    CHECK(ac.result["unif"]["uniform"] == true);
    Json low = gl2;
    low["n"] = 1;
    CHECK(exit_code(exec("achk-cert", low)) == 2);

    auto dm = exec("dimu-pipeline", gl2);
    CHECK(exit_code(dm) == 0);
    CHECK(dm.result["certificates"].size() == 6);
    Json bad = gl2;
    bad["instance"]["family"] = "heisenberg";
    CHECK_THROWS_WITH_AS(exec("griwa", bad), "field 'family': this command needs gl_n", InvalidInput);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    Json gl2 = {{"instance", {{"family", "gl_n"}, {"p", 3}, {"n", 2}, {"r", 1}, {"R", 4}}}, {"n", 2}};
    for (const char* cmd : {"iwahori-verify", "griwa", "achk-cert", "dimu-pipeline", "pval-check"}) {
        setenv("GREXT_THREADS", "1", 1);
        auto one = report_text(exec(cmd, gl2, 5), 5);
        setenv("GREXT_THREADS", "4", 1);
        auto four = report_text(exec(cmd, gl2, 5), 5);
        CAPTURE(cmd);
        CHECK(one == four);
    }
    unsetenv("GREXT_THREADS");
    CHECK(report_text(exec("koz-cert", z27_chain(1)), 1) == report_text(exec("koz-cert", z27_chain(1)), 1));
}

TEST_CASE("run writes the report and the table") {
    auto in = temp_file("z3.json", {{"algebra", group({3})}, {"n_max", 3}});
    auto out = std::filesystem::temp_directory_path() / "grext_cli_report.json";
    JobConfig job;
    job.command = "ext";
    job.inputs = {in.string()};
    job.output = out.string();
    std::ostringstream o, e;
    CHECK(run(job, o, e) == 0);
    std::ifstream f(out);
    auto j = Json::parse(f);
    CHECK(j["result"]["dims"] == Json::array({1, 1, 1}));
    auto txt = out;
    txt.replace_extension(".txt");
    CHECK(std::filesystem::exists(txt));
    CHECK(o.str().find("dim") != std::string::npos);
}

TEST_CASE("parallel_for keeps slots and rethrows the first error") {
    setenv("GREXT_THREADS", "3", 1);
    std::vector<int> v(50, 0);
    parallel_for(v.size(), [&](std::size_t i) { v[i] = static_cast<int>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
    CHECK_THROWS_WITH(parallel_for(10,
                                   [](std::size_t i) {
                                       if (i == 7 || i == 4) throw std::runtime_error("at " + std::to_string(i));
                                   }),
                      "at 4");
    unsetenv("GREXT_THREADS");
    CHECK(thread_cap() >= 1);
}
