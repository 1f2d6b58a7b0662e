#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "k3moduli/errors.hpp"
#include "k3moduli/io.hpp"

namespace {

using k3moduli::io::json;

struct SubcommandArgs {
    std::string input_path;   // empty: stdin
    std::string output_path;  // empty: stdout
    std::string report_mode = "machine";
};

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path.empty()) {
        buf << std::cin.rdbuf();
        if (std::cin.bad()) throw std::ios_base::failure("failed to read standard input");
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::ios_base::failure("cannot open input file: " + path);
        buf << in.rdbuf();
        if (in.bad()) throw std::ios_base::failure("failed to read input file: " + path);
    }
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!std::cout) throw std::ios_base::failure("failed to write standard output");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open output file: " + path);
    out << text;
    if (!out) throw std::ios_base::failure("failed to write output file: " + path);
}

int run(const std::string& command, const SubcommandArgs& args) {
    const auto start = std::chrono::steady_clock::now();

    json input;
    try {
        input = json::parse(read_input(args.input_path));
    } catch (const json::parse_error& e) {
        throw k3moduli::bad_input_error(std::string("malformed JSON: ") + e.what());
    }

    k3moduli::io::CommandOutcome outcome = k3moduli::io::run_command(command, input);
    const std::string text = args.report_mode == "human"
                                 ? k3moduli::io::render_human(outcome.report)
                                 : k3moduli::io::render_machine(outcome.report);
    write_output(args.output_path, text);

    // Timing goes to stderr only: report files are byte-identical across runs.
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    std::cerr << command << ": " << elapsed.count() << " ms\n";
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice computations for moduli of sheaves on K3 surfaces"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"analyze-moduli", "brauer-order",
                                               "brauer-kernel", "dp-check",
                                               "cech-h2",       "twist-class"};
    std::map<std::string, SubcommandArgs> args;
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        SubcommandArgs& a = args[name];
        sub->add_option("--input", a.input_path, "input JSON document (default: stdin)");
        sub->add_option("--output", a.output_path, "output report file (default: stdout)");
        sub->add_option("--report", a.report_mode, "report format")
            ->check(CLI::IsMember({"human", "machine"}))
            ->default_val("machine");
    }

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, args[command]);
    } catch (const k3moduli::bad_input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const k3moduli::invariant_violation_error& e) {
        std::cerr << "invariant violation (library bug): " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
