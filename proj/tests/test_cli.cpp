#include "../tools/cli_app.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using nlohmann::json;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "summa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = summa::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Validator for the subset of JSON Schema used by docs/schema.json.
class Schema {
 public:
  explicit Schema(json root) : root_(std::move(root)) {}

  bool validate(const json& value, std::string* why) const { return check(root_, value, "$", why); }

 private:
  const json& resolve(const std::string& ref) const {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
    return root_.at("$defs").at(ref.substr(prefix.size()));
  }

  static bool type_ok(const std::string& t, const json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    throw std::runtime_error("unsupported type " + t);
  }

  bool check(const json& s, const json& v, const std::string& path, std::string* why) const {
    auto fail = [&](const std::string& msg) {
      if (why) *why = path + ": " + msg;
      return false;
    };
    if (s.contains("$ref")) return check(resolve(s["$ref"]), v, path, why);
    if (s.contains("const") && v != s["const"]) return fail("expected const " + s["const"].dump());
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found |= e == v;
      if (!found) return fail("not in enum: " + v.dump());
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok |= type_ok(t, v);
      } else {
        ok = type_ok(s["type"], v);
      }
      if (!ok) return fail("wrong type for " + v.dump().substr(0, 60));
    }
    if (s.contains("pattern") && v.is_string() &&
        !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>()))) {
      return fail("pattern mismatch: " + v.dump());
    }
    if (s.contains("oneOf")) {
      int matches = 0;
      for (const auto& alt : s["oneOf"]) matches += check(alt, v, path, nullptr) ? 1 : 0;
      if (matches != 1) return fail("matched " + std::to_string(matches) + " oneOf branches");
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& key : s["required"]) {
          if (!v.contains(key.get<std::string>())) return fail("missing " + key.get<std::string>());
        }
      }
      if (s.contains("properties")) {
        for (const auto& [key, sub] : s["properties"].items()) {
          if (v.contains(key) && !check(sub, v[key], path + "." + key, why)) return false;
        }
      }
    }
    if (v.is_array() && s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!check(s["items"], v[i], path + "[" + std::to_string(i) + "]", why)) return false;
      }
    }
    return true;
  }

  json root_;
};

const Schema& schema() {
  static const Schema s = [] {
    std::ifstream in(std::string(SUMMA_SOURCE_DIR) + "/docs/schema.json");
    if (!in) throw std::runtime_error("cannot open docs/schema.json");
    return Schema(json::parse(in));
  }();
  return s;
}

json run_json(const std::vector<std::string>& args) {
  const auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  std::string why;
  EXPECT_TRUE(schema().validate(doc, &why)) << args[0] << ": " << why;
  return doc;
}

}  // namespace

TEST(Cli, BernoulliExample) {
  const auto doc = run_json({"bernoulli", "--k", "4"});
  EXPECT_EQ(doc["result"]["value"], "-1/30");
  EXPECT_TRUE(doc["result"]["genfun_agrees"].get<bool>());
  const auto all = run_json({"bernoulli", "--k", "12", "--all"});
  EXPECT_EQ(all["result"]["values"].size(), 13u);
  EXPECT_EQ(all["result"]["values"][1], "1/2");
  EXPECT_EQ(all["result"]["value"], "-691/2730");
}

TEST(Cli, AbelGrandi) {
  const auto doc = run_json({"sum", "--method", "abel", "--series", "grandi"});
  EXPECT_EQ(doc["result"]["verdict"], "finite");
  EXPECT_NEAR(doc["result"]["value"].get<double>(), 0.5, 1e-6);
}

TEST(Cli, SumMethods) {
  EXPECT_EQ(run_json({"sum", "--method", "cesaro", "--series", "S1"})["result"]["verdict"], "divergent");
  EXPECT_TRUE(run_json({"sum", "--method", "cesaro", "--series", "S1"})["result"]["value"].is_null());
  EXPECT_EQ(run_json({"sum", "--method", "ramanujan", "--series", "S1"})["result"]["exact"], "-1/12");
  EXPECT_NEAR(run_json({"sum", "--method", "zeta-eta", "--series", "monomial:0"})["result"]["value"].get<double>(),
              -0.5, 1e-6);
  EXPECT_EQ(run_json({"sum", "--method", "partial", "--series", "monomial:1", "--n", "10"})["result"]["exact"], "55");
  EXPECT_EQ(run_json({"sum", "--method", "euler", "--series", "grandi"})["result"]["method"], "abel");
}

TEST(Cli, CasimirExample) {
  const auto doc = run_json({"casimir", "--d", "1e-6", "--N", "400", "--cutoff", "bump"});
  EXPECT_NEAR(doc["result"]["limit"].get<double>(), -4.33e-10, 0.02 * 4.33e-10);
  EXPECT_LT(doc["result"]["relative_error"].get<double>(), 1e-3);
  EXPECT_EQ(doc["config"]["cutoff"], "bump");
  EXPECT_DOUBLE_EQ(doc["config"]["hbar"].get<double>(), 1.054571817e-34);
}

TEST(Cli, EveryCommandMatchesSchema) {
  const std::vector<std::vector<std::string>> runs = {
      {"faulhaber", "--s", "3", "--N", "5"},
      {"ledger"},
      {"smoothed", "--s", "1", "--N", "100"},
      {"extract", "--s", "1"},
      {"grandi", "--N", "1000"},
      {"scaling-demo", "--cutoff", "poly:1", "--N", "2"},
      {"delta-seq"},
      {"delta-seq", "--test", "constant", "--j", "10"},
      {"em-tail"},
      {"em-tail", "--function", "falling:3", "--N", "50"},
      {"stirling", "--n", "2-5", "--terms", "2"},
      {"em-diverge", "--n", "1", "--max-terms", "10"},
      {"em-diverge", "--n", "10", "--max-terms", "5"},
      {"casimir-force", "--N", "100"},
      {"truncate", "--alpha", "1/137"},
      {"borel"},
      {"borel", "--series", "geometric:1", "--x", "0.5"},
      {"gyro", "--order", "1"},
      {"flat-check"},
  };
  for (const auto& args : runs) run_json(args);
}

TEST(Cli, SpecificValues) {
  EXPECT_EQ(run_json({"faulhaber", "--s", "3", "--N", "5"})["result"]["value"], "225");
  EXPECT_EQ(run_json({"ledger"})["result"]["clash_count"], 1);
  EXPECT_EQ(run_json({"truncate", "--alpha", "1/137"})["result"]["N_star"], 137);
  EXPECT_EQ(run_json({"truncate", "--alpha", "0.5"})["result"]["N_star"], 2);
  EXPECT_EQ(run_json({"em-diverge", "--n", "1", "--max-terms", "10"})["result"]["growth_index"], 5);
  EXPECT_TRUE(run_json({"em-diverge", "--n", "10", "--max-terms", "5"})["result"]["growth_index"].is_null());
  EXPECT_TRUE(run_json({"stirling"})["result"]["all_hold"].get<bool>());
  EXPECT_NEAR(run_json({"gyro", "--order", "2"})["result"]["value"].get<double>(), 1.15964e-3, 1e-8);
  EXPECT_NEAR(run_json({"borel"})["result"]["value"].get<double>(), 0.9156333394, 1e-9);
  EXPECT_TRUE(run_json({"delta-seq"})["result"]["monotone"].get<bool>());
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"sum", "--series", "harmonic"},
           {"sum", "--method", "borel", "--series", "grandi"},
           {"sum"},
           {"smoothed", "--cutoff", "gauss"},
           {"smoothed", "--cutoff", "poly:0"},
           {"bernoulli"},
           {"bernoulli", "--k", "x"},
           {"--format", "xml", "ledger"},
           {"stirling", "--n", "5-2"},
           {"delta-seq", "--j", "10,,20"},
           {"borel", "--series", "harmonic"},
           {"casimir", "--N", "5"},
           {"gyro", "--order", "3"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "<none>" : args[0]) << " " << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, ComputationalErrorsExitOne) {
  const auto r = run({"sum", "--method", "abel", "--series", "geometric:2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("sum"), std::string::npos);
  EXPECT_EQ(run({"borel", "--series", "geometric:20", "--x", "0.1"}).code, 1);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("casimir"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"casimir", "--N", "200"},
           {"extract", "--s", "2"},
           {"--format", "csv", "stirling", "--n", "2-10"},
           {"sum", "--method", "cesaro", "--series", "grandi"},
       }) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, CsvLayout) {
  const auto r = run({"--format", "csv", "casimir", "--N", "400"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# command=casimir");
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  std::size_t header = 0;
  while (header < lines.size() && lines[header].rfind("#", 0) == 0) ++header;
  ASSERT_LT(header, lines.size());
  EXPECT_EQ(header, 7u);  // every config key is echoed
  EXPECT_EQ(lines[header], "N,value,error_estimate");
  EXPECT_EQ(lines.size() - header - 1, 4u);
  EXPECT_EQ(lines.back().rfind("400,", 0), 0u);

  const auto t = run({"--format", "csv", "truncate", "--alpha", "1/2"});
  EXPECT_NE(t.out.find("N,log10_value\n1,"), std::string::npos);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "summa_cli_test_output.json";
  std::filesystem::remove(path);
  const auto r = run({"-o", path.string(), "ledger"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const json doc = json::parse(in);
  EXPECT_EQ(doc["command"], "ledger");
  std::filesystem::remove(path);
}

TEST(Cli, FormatDouble) {
  EXPECT_EQ(summa::cli::format_double(0.1), "0.1");
  EXPECT_EQ(summa::cli::format_double(-1.0 / 360), "-0.002777777777777778");
  EXPECT_EQ(std::stod(summa::cli::format_double(1.0 / 3)), 1.0 / 3);
}
