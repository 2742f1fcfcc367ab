#include "kwcalc/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "kwcalc/io.hpp"
#include "kwcalc/parse.hpp"
#include "kwcalc/verify.hpp"

namespace kw {

namespace {

struct Session {
    const SessionConfig& cfg;
    std::istream& in;
    std::ostream& out;
    SpecPtr spec; // loaded lazily

    const SpecPtr& bundle() {
        if (!spec) {
            if (cfg.bundle_path.empty())
                throw Error("this command needs --bundle <path>");
            spec = load_bundle(cfg.bundle_path);
        }
        return spec;
    }

    std::string expr_text(const std::string& arg) {
        if (arg == "-") {
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }
        return arg;
    }

    GradedElement element(const std::string& arg) {
        return parse_element(bundle(), expr_text(arg));
    }

    MultiBracket bracket(const std::string& arg) {
        GradedElement theta = element(arg);
        if (theta.is_zero()) return MultiBracket(theta, 0);
        if (!theta.is_homogeneous())
            throw Error("generator must be homogeneous: " + theta.str());
        return MultiBracket(theta);
    }
};

void require_args(const SessionConfig& cfg, std::size_t count) {
    if (cfg.args.size() != count)
        throw Error(cfg.command + " takes " + std::to_string(count) + " arguments");
}

int run_verify(Session& s) {
    const SessionConfig& cfg = s.cfg;
    if (cfg.args.size() != 2)
        throw Error("verify takes a mode (courant|closure|filippov) and a target");
    const std::string& mode = cfg.args[0];
    const std::string& target = cfg.args[1];

    VerificationReport report;
    if (const ExampleStructure* ex = find_example(target)) {
        MultiBracket c(ex->theta);
        if (mode == "courant")
            report = check_pre_courant(c, cfg.degree_bound);
        else if (mode == "closure")
            report = check_closure(c, cfg.degree_bound);
        else if (mode == "filippov")
            report = check_filippov(c, cfg.degree_bound);
        else
            throw Error("unknown verify mode: " + mode);
    } else if (target != "-" && std::filesystem::exists(target)) {
        BracketTable table = load_table(s.bundle(), target);
        if (mode == "courant") {
            report = check_pre_courant(table);
        } else if (mode == "closure") {
            report = check_closure(theta_from_table(table), cfg.degree_bound);
        } else if (mode == "filippov") {
            report = check_filippov(theta_from_table(table), cfg.degree_bound);
        } else {
            throw Error("unknown verify mode: " + mode);
        }
    } else {
        MultiBracket c = s.bracket(target);
        if (mode == "courant")
            report = check_pre_courant(c, cfg.degree_bound);
        else if (mode == "closure")
            report = check_closure(c, cfg.degree_bound);
        else if (mode == "filippov")
            report = check_filippov(c, cfg.degree_bound);
        else
            throw Error("unknown verify mode: " + mode);
    }
    s.out << (cfg.machine ? report.render_machine() : report.render_text());
    return report.passed() ? 0 : 1;
}

void print_symbol(Session& s, const SymbolValue& sym) {
    for (std::size_t i = 0; i < sym.images.size(); ++i)
        s.out << "sigma[x" << i + 1 << "] = " << sym.images[i].str() << "\n";
}

int dispatch(Session& s) {
    const SessionConfig& cfg = s.cfg;
    const std::string& cmd = cfg.command;

    if (cmd == "pbracket") {
        require_args(cfg, 2);
        s.out << pbracket(s.element(cfg.args[0]), s.element(cfg.args[1])).str() << "\n";
        return 0;
    }
    if (cmd == "kw" || cmd == "wedge") {
        require_args(cfg, 2);
        MultiBracket a = s.bracket(cfg.args[0]);
        MultiBracket b = s.bracket(cfg.args[1]);
        MultiBracket r = (cmd == "kw") ? kw_bracket(a, b) : kw_wedge(a, b);
        s.out << r.theta().str() << "\n";
        if (cfg.print_table) s.out << render_table(table_from_theta(r, cfg.degree_bound));
        return 0;
    }
    if (cmd == "pair") {
        require_args(cfg, 2);
        s.out << pairing(s.element(cfg.args[0]), s.element(cfg.args[1])).str() << "\n";
        return 0;
    }
    if (cmd == "eval") {
        if (cfg.args.empty()) throw Error("eval takes a generator and arguments");
        MultiBracket c = s.bracket(cfg.args[0]);
        std::vector<GradedElement> args;
        for (std::size_t i = 1; i < cfg.args.size(); ++i) args.push_back(s.element(cfg.args[i]));
        const int k = static_cast<int>(args.size());
        bool sections = true, functions = false;
        for (const auto& a : args) {
            if (!a.is_section()) sections = false;
            if (!a.is_zero() && a.is_function()) functions = true;
        }
        GradedElement value = GradedElement::zero(c.spec_ptr());
        if (k == c.n() - 1 && sections)
            value = kw_eval(c, args);
        else if (k == c.n() - 1 && functions)
            value = extend_to_functions(c, args);
        else if (k == c.n())
            value = bar_eval(HigherBracket(c), args);
        else
            throw Error("eval takes n-1 sections (or one function slot) or n multivectors "
                        "for a degree-n generator");
        s.out << value.str() << "\n";
        return 0;
    }
    if (cmd == "symbol") {
        if (cfg.args.empty()) throw Error("symbol takes a generator and arguments");
        MultiBracket c = s.bracket(cfg.args[0]);
        std::vector<GradedElement> args;
        for (std::size_t i = 1; i < cfg.args.size(); ++i) args.push_back(s.element(cfg.args[i]));
        bool sections = true;
        for (const auto& a : args)
            if (!a.is_section()) sections = false;
        if (sections)
            print_symbol(s, kw_symbol(c, args));
        else
            print_symbol(s, bar_symbol(HigherBracket(c), args));
        return 0;
    }
    if (cmd == "verify") return run_verify(s);
    if (cmd == "example") {
        require_args(cfg, 1);
        const ExampleStructure* ex = find_example(cfg.args[0]);
        if (!ex) {
            std::string names;
            for (const auto& e : builtin_examples()) names += " " + e.name;
            throw Error("unknown example '" + cfg.args[0] + "'; available:" + names);
        }
        if (!cfg.machine) {
            s.out << "# " << ex->name << ": " << ex->note << "\n";
            s.out << ex->spec->str() << "\n";
            s.out << "theta = ";
        }
        s.out << ex->theta.str() << "\n";
        return 0;
    }
    throw Error("unknown command: " + cmd);
}

} // namespace

int run(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    Session session{config, in, out, {}};
    try {
        if (config.degree_bound < 0) throw Error("--degree-bound must be >= 0");
        return dispatch(session);
    } catch (const ParseError& e) {
        if (config.machine)
            out << "ERROR " << e.what() << " at position " << e.pos << "\n";
        else
            err << "error: " << e.what() << " at position " << e.pos << "\n";
        return 2;
    } catch (const Error& e) {
        if (config.machine)
            out << "ERROR " << e.what() << "\n";
        else
            err << "error: " << e.what() << "\n";
        return 2;
    }
}

int main_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err) {
    SessionConfig cfg;
    CLI::App app{"exact calculus for graded brackets over a metric vector bundle"};
    app.add_option("--bundle", cfg.bundle_path, "bundle description file");
    app.add_option("--degree-bound", cfg.degree_bound,
                   "x-degree bound of the generating family used by tables and checks")
        ->capture_default_str();
    app.add_flag("--machine", cfg.machine, "machine-readable output");
    app.add_flag("--table", cfg.print_table, "also print the evaluation table (kw, wedge)");
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"pbracket", "Poisson bracket of two expressions"},
        {"kw", "graded bracket of the generators of two expressions"},
        {"wedge", "product of the generators of two expressions"},
        {"pair", "extended pairing of two multivectors"},
        {"eval", "evaluate a generator on sections or multivectors"},
        {"symbol", "symbol of a generator on sections or multivectors"},
        {"verify", "courant|closure|filippov on an expression, table file or example"},
        {"example", "print a built-in generator"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("args", cfg.args, "arguments");
        sub->parse_complete_callback([&cfg, name = name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    return run(cfg, in, out, err);
}

} // namespace kw
