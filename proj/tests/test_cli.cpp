#include "doctest.h"

#include "gradedlc/commands.hpp"

#include <fstream>

using namespace gradedlc;
using nlohmann::ordered_json;

namespace {

CommandOptions with_prime(long p) {
  CommandOptions o;
  o.prime = Integer(p);
  return o;
}

CommandOptions serial_opts(CommandOptions o) {
  o.policy = {Execution::serial, 1};
  return o;
}

std::vector<std::string> warning_codes(const Report& r) {
  std::vector<std::string> out;
  for (const auto& w : r.warnings) out.push_back(w.code);
  return out;
}

std::string data_file(const std::string& name) { return std::string(GRADEDLC_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("report layout") {
    auto r = cmd_bad_primes(builtin_input("x1x2"), {});
    auto j = r.to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"schema", "version", "command", "input", "results", "warnings", "exit_code"});
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["version"] == kVersion);
    CHECK(j["command"]["name"] == "bad-primes");
    CHECK(j["input"]["source"] == "builtin:x1x2");
    CHECK(j["input"]["sha256"].get<std::string>().size() == 64);
    CHECK(j["exit_code"] == 0);
    CHECK(r.json_text().back() == '\n');
  }

  TEST_CASE("sha256 of known bytes") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("input errors") {
    CHECK_THROWS_AS(load_ideal_text("{", "x"), InputError);
    CHECK_THROWS_AS(load_ideal_text(R"({"variables": 2, "generators": [[1]]})", "x"), InputError);
    CHECK_THROWS_AS(load_ideal_text(R"({"variables": 20, "generators": []})", "x"), InputError);
    CHECK_THROWS_AS(load_ideal_file("/nonexistent/ideal.json"), InputError);
    CHECK_THROWS_AS(builtin_input("nope"), InputError);
    CHECK_THROWS_AS(require_prime(with_prime(4), "lyubeznik"), InputError);
    CHECK_THROWS_AS(require_prime(with_prime(1), "lyubeznik"), InputError);
    CHECK_THROWS_AS(cmd_lyubeznik(builtin_input("reisner"), with_prime(6)), InputError);
    CHECK(require_prime(with_prime(7), "lyubeznik") == 7);
  }

  TEST_CASE("files and built-ins hash the same ideal differently but parse the same") {
    auto f = load_ideal_file(data_file("reisner.json"));
    auto b = builtin_input("reisner");
    CHECK(f.parsed.ideal == b.parsed.ideal);
    CHECK(f.source == data_file("reisner.json"));
    std::ifstream in(data_file("reisner.json"), std::ios::binary);
    std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(f.sha256 == sha256_hex(raw));
  }

  TEST_CASE("lc: reisner H^4") {
    auto r = cmd_lc(builtin_input("reisner"), 4, std::nullopt, {});
    const auto& mods = r.results["modules"];
    REQUIRE(mods.size() == 1);
    REQUIRE(mods[0]["pieces"].size() == 1);
    CHECK(mods[0]["pieces"][0]["class"] == ordered_json::array({1, 2, 3, 4, 5, 6}));
    CHECK(mods[0]["pieces"][0]["group"]["text"] == "Z/2");
    CHECK(r.exit_code == 0);
  }

  TEST_CASE("lc: (x1)") {
    auto r = cmd_lc(builtin_input("x1"), std::nullopt, std::nullopt, {});
    REQUIRE(r.results["modules"].size() == 2);
    CHECK(r.results["modules"][0]["pieces"].empty());
    CHECK(r.results["modules"][1]["j"] == 1);
    const auto& pieces = r.results["modules"][1]["pieces"];
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0]["class"] == ordered_json::array({1}));
    CHECK(pieces[0]["group"]["text"] == "Z");
    // with a second variable x2 is a nonzerodivisor: still only the class {1}
    auto in = load_ideal_text(R"({"variables": 2, "generators": [[1,0]]})", "x1-in-2");
    auto two = cmd_lc(in, 1, std::nullopt, {});
    REQUIRE(two.results["modules"][0]["pieces"].size() == 1);
    CHECK(two.results["modules"][0]["pieces"][0]["class"] == ordered_json::array({1}));
  }

  TEST_CASE("lc: one class, mod p and mixed") {
    auto r = cmd_lc(builtin_input("three-points"), 2, mask_from_elements({1, 2, 3}), {});
    CHECK(r.results["modules"][0]["pieces"][0]["group"]["free_rank"] == 2);
    auto mod = cmd_lc(builtin_input("reisner"), 3, mask_from_elements({1, 2, 3, 4, 5, 6}), with_prime(2));
    CHECK(mod.results["coefficients"] == "Z/2");
    CHECK(mod.results["modules"][0]["pieces"][0]["group"]["text"] == "Z/2");
    auto mixed_opts = with_prime(2);
    mixed_opts.mixed = true;
    auto mixed = cmd_lc(builtin_input("reisner"), std::nullopt, std::nullopt, mixed_opts);
    CHECK(mixed.results["coefficients"] == "I+pS");
    const auto& mods = mixed.results["modules"];
    for (const auto& m : mods)
      if (!m["pieces"].empty()) CHECK(m["j"] == 4);
  }

  TEST_CASE("lc: unit ideal and radical warnings") {
    auto u = cmd_lc(load_ideal_file(data_file("unit.json")), std::nullopt, std::nullopt, {});
    CHECK(warning_codes(u) == std::vector<std::string>{"UNIT_IDEAL"});
    for (const auto& m : u.results["modules"]) CHECK(m["pieces"].empty());
    auto sq = cmd_lc(load_ideal_file(data_file("squares.json")), std::nullopt, std::nullopt, {});
    CHECK(warning_codes(sq) == std::vector<std::string>{"RADICAL_TAKEN"});
  }

  TEST_CASE("bad-primes") {
    CHECK(cmd_bad_primes(builtin_input("reisner"), {}).results["bad_primes"] == ordered_json::array({"2"}));
    CHECK(cmd_bad_primes(builtin_input("three-points"), {}).results["bad_primes"].empty());
    CHECK(cmd_bad_primes(builtin_input("x1x2"), {}).results["bad_primes"].empty());
  }

  TEST_CASE("support") {
    auto r = cmd_support(builtin_input("reisner"), 4, {});
    const auto& m = r.results["modules"][0];
    CHECK(m["support"]["dimension"] == 0);
    CHECK(m["support"]["only_characteristic"] == "2");
    REQUIRE(m["associated_primes"].size() == 1);
    CHECK(m["associated_primes"][0]["characteristic"] == "2");
    auto p = cmd_support(builtin_input("reisner"), 4, with_prime(2));
    CHECK(p.results["modules"][0]["multiplication_by_p"]["surjective"] == false);
    CHECK(p.results["modules"][0]["multiplication_by_p"]["injective"] == false);
  }

  TEST_CASE("lyubeznik") {
    auto r3 = cmd_lyubeznik(builtin_input("reisner"), with_prime(3));
    CHECK(r3.results["agree"] == true);
    CHECK(r3.results["label"] == "graded-model Lyubeznik numbers");
    CHECK(r3.exit_code == 0);
    auto r2 = cmd_lyubeznik(builtin_input("reisner"), with_prime(2));
    CHECK(r2.results["agree"] == false);
    CHECK_FALSE(r2.results["differences"].empty());
    CHECK(r2.results["p_is_bad"] == true);
    CHECK(r2.exit_code == 0);
    auto t = cmd_lyubeznik(builtin_input("three-points"), with_prime(7));
    CHECK(t.results["agree"] == true);
    CHECK(t.results["standard"]["lambda"] == ordered_json::parse("[[0,0],[0,1]]"));
    CHECK_THROWS_AS(cmd_lyubeznik(load_ideal_file(data_file("unit.json")), with_prime(2)), InputError);
    CHECK_THROWS_AS(cmd_lyubeznik(builtin_input("reisner"), {}), InputError);
  }

  TEST_CASE("iterated") {
    auto good = cmd_iterated(builtin_input("reisner"), 0, 4, IteratedAt::m, with_prime(5));
    CHECK(good.results["injective"] == true);
    auto bad = cmd_iterated(builtin_input("reisner"), 0, 4, IteratedAt::m, with_prime(2));
    CHECK(bad.results["injective"] == false);
    CHECK(bad.results["witness"].is_string());
    CHECK(bad.results["paths_agree"] == true);
    auto x1 = cmd_iterated(builtin_input("x1"), 0, 1, IteratedAt::n, {});
    CHECK(x1.results["group"]["text"] == "Z");
    REQUIRE(x1.results["associated_primes"].size() == 1);
    CHECK(x1.results["associated_primes"][0]["characteristic"] == "0");
  }

  TEST_CASE("verify-counterexample") {
    auto r = cmd_verify_counterexample({});
    CHECK(r.results["verdict"] == "pass");
    CHECK(r.results["mode"] == "reproduce");
    CHECK(r.exit_code == 0);
    REQUIRE(r.results["claims"].size() == 6);
    for (const auto& c : r.results["claims"]) CHECK(c["status"] == "pass");
    CHECK(r.results["bass_at_m"] == ordered_json::array({1, 1, 0, 0, 0, 0, 0, 0}));
    auto codes = warning_codes(r);
    CHECK(std::count(codes.begin(), codes.end(), "PAPER_TEXT_DISCREPANCY") >= 1);

    auto three = cmd_verify_counterexample(with_prime(3));
    CHECK(three.results["mode"] == "expected-fail");
    CHECK(three.results["verdict"] == "pass");
    CHECK(three.exit_code == 0);
    std::size_t expected_fail = 0;
    for (const auto& c : three.results["claims"]) expected_fail += c["status"] == "expected-fail";
    CHECK(expected_fail == 4);
  }

  TEST_CASE("oracle-check") {
    auto r = cmd_oracle_check(builtin_input("three-points"), {});
    CHECK(r.results["verdict"] == "pass");
    CHECK(r.exit_code == 0);
    for (const auto& c : r.results["checks"]) CHECK(c["status"] == "pass");
  }

  TEST_CASE("byte-identical reports across runs and thread policies") {
    auto a = cmd_lyubeznik(builtin_input("reisner"), with_prime(2)).json_text();
    auto b = cmd_lyubeznik(builtin_input("reisner"), with_prime(2)).json_text();
    auto c = cmd_lyubeznik(builtin_input("reisner"), serial_opts(with_prime(2))).json_text();
    CHECK(a == b);
    CHECK(a == c);
    auto l1 = cmd_lc(builtin_input("reisner"), std::nullopt, std::nullopt, {}).json_text();
    auto l2 = cmd_lc(builtin_input("reisner"), std::nullopt, std::nullopt, serial_opts({})).json_text();
    CHECK(l1 == l2);
    auto v1 = cmd_verify_counterexample({}).json_text();
    auto v2 = cmd_verify_counterexample(serial_opts({})).json_text();
    CHECK(v1 == v2);
  }

  TEST_CASE("table rendering") {
    LocalCohomology lc(builtin_reisner());
    auto t = standard_lyubeznik_table(lc, 2);
    auto text = render_table(t);
    CHECK(std::count(text.begin(), text.end(), '\n') >= 4);
    auto j = to_json(t);
    CHECK(j["kind"] == "standard");
    CHECK(j["d"] == 3);
  }
}
