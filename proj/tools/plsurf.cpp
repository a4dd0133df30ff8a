// Command-line driver. Links only the C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "plsurf/plsurf.h"

namespace {

struct CString {
  char* p = nullptr;
  ~CString() { plsurf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using InstancePtr = std::unique_ptr<plsurf_instance, decltype(&plsurf_instance_free)>;

struct Failure {
  int exit_code;
};

[[noreturn]] void input_error(const std::string& what) {
  std::cerr << "error: " << what << "\n";
  throw Failure{1};
}

void check(int status) {
  if (status == PLSURF_OK) return;
  std::cerr << "error: " << plsurf_last_error() << "\n";
  throw Failure{plsurf_status_category(status)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) input_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) input_error("cannot write " + path);
}

bool is_named_kind(const std::string& name) {
  CString kinds;
  check(plsurf_named_kinds(&kinds.p));
  std::istringstream ss(kinds.str());
  std::string k;
  while (std::getline(ss, k))
    if (k == name) return true;
  return name.find('=') != std::string::npos;
}

// An instance file, or a generator kind when no such file exists.
InstancePtr load(const std::string& source, std::uint32_t seed) {
  plsurf_instance* raw = nullptr;
  if (!std::ifstream(source) && is_named_kind(source))
    check(plsurf_instance_generate(source.c_str(), seed, &raw));
  else
    check(plsurf_instance_parse(read_file(source).c_str(), &raw));
  return {raw, &plsurf_instance_free};
}

struct Options {
  std::string input;
  std::string automorphism;
  std::string json_path;
  std::string dot_path;
  std::string output = "-";
  std::uint32_t seed = 0;
  bool assume_isotopic = false;
};

// Prints the text report and, when asked, writes the JSON report.
template <class Fn>
void report(const Options& o, Fn&& run) {
  CString text;
  check(run(PLSURF_TEXT, &text.p));
  std::cout << text.str();
  if (!o.json_path.empty()) {
    CString json;
    check(run(PLSURF_JSON, &json.p));
    write_file(o.json_path, json.str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise linear functions on surfaces: atoms, canonical neighbourhoods, decompositions"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "instance file, or a generator kind")->required();
    sub->add_option("--seed", o.seed, "seed when the input is a generator kind");
    sub->add_option("--json", o.json_path, "write the JSON report to PATH (- for stdout)");
  };

  auto* validate = app.add_subcommand("validate", "check the instance and its axioms");
  add_input(validate);
  auto* analyze = app.add_subcommand("analyze", "critical vertices, special levels and critical components");
  add_input(analyze);
  auto* atoms = app.add_subcommand("atoms", "atoms and canonical neighbourhoods with their Euler characteristics");
  add_input(atoms);
  auto* decompose = app.add_subcommand("decompose", "M_neg and the pieces of its complement (needs chi(M) < 0)");
  add_input(decompose);
  decompose->add_option("--dot", o.dot_path, "write the adjacency graph in Graphviz format");
  auto* lefschetz = app.add_subcommand("lefschetz", "Lefschetz numbers and invariant cells of an automorphism");
  add_input(lefschetz);
  lefschetz->add_option("automorphism", o.automorphism, "automorphism file")->required();
  lefschetz->add_flag("--assume-isotopic", o.assume_isotopic,
                      "assume the automorphism is isotopic to the identity and apply the triviality theorem");
  auto* leaves = app.add_subcommand("leaves", "check that an f-preserving automorphism fixes every leaf of the atoms");
  add_input(leaves);
  leaves->add_option("automorphism", o.automorphism, "automorphism file")->required();
  auto* selftest = app.add_subcommand("selftest", "run the property suite");
  selftest->add_option("--json", o.json_path, "write the JSON report to PATH (- for stdout)");
  auto* generate = app.add_subcommand("generate", "write a generated instance");
  generate->add_option("kind", o.input, "named kind or genus=G,crosscaps=K,boundary=B,dimples=D")->required();
  generate->add_option("--seed", o.seed, "generator seed");
  generate->add_option("-o,--output", o.output, "output file (- for stdout)");
  auto* kinds = app.add_subcommand("kinds", "list named generator kinds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate) {
      auto inst = load(o.input, o.seed);
      report(o, [&](int fmt, char** out) { return plsurf_validate(inst.get(), fmt, out); });
    } else if (*analyze) {
      auto inst = load(o.input, o.seed);
      report(o, [&](int fmt, char** out) { return plsurf_analyze(inst.get(), fmt, out); });
    } else if (*atoms) {
      auto inst = load(o.input, o.seed);
      report(o, [&](int fmt, char** out) { return plsurf_atoms(inst.get(), fmt, out); });
    } else if (*decompose) {
      auto inst = load(o.input, o.seed);
      CString dot;
      report(o, [&](int fmt, char** out) {
        return plsurf_decompose(inst.get(), fmt, out, fmt == PLSURF_TEXT ? &dot.p : nullptr);
      });
      if (!o.dot_path.empty()) write_file(o.dot_path, dot.str());
    } else if (*lefschetz) {
      auto inst = load(o.input, o.seed);
      auto text = read_file(o.automorphism);
      report(o, [&](int fmt, char** out) {
        return plsurf_lefschetz(inst.get(), text.c_str(), o.assume_isotopic ? 1 : 0, fmt, out);
      });
    } else if (*leaves) {
      auto inst = load(o.input, o.seed);
      auto text = read_file(o.automorphism);
      report(o, [&](int fmt, char** out) { return plsurf_leaf_check(inst.get(), text.c_str(), fmt, out); });
    } else if (*selftest) {
      CString text, json;
      int passed = 0;
      check(plsurf_selftest(
          [](const char* line, void*) {
            std::cout << line << "\n";
            std::cout.flush();
          },
          nullptr, PLSURF_JSON, &json.p, &passed));
      if (!o.json_path.empty()) write_file(o.json_path, json.str());
      std::cout << (passed ? "selftest passed\n" : "selftest FAILED\n");
      return passed ? 0 : 3;
    } else if (*generate) {
      auto inst = load(o.input, o.seed);
      CString text;
      check(plsurf_instance_serialize(inst.get(), &text.p));
      write_file(o.output, text.str());
    } else if (*kinds) {
      CString text;
      check(plsurf_named_kinds(&text.p));
      std::cout << text.str();
    }
  } catch (const Failure& f) {
    return f.exit_code;
  }
  return 0;
}
