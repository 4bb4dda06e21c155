// Copyright 2026 The lcq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcq/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "lcq/analog.hpp"
#include "lcq/angles.hpp"
#include "lcq/circuit.hpp"
#include "lcq/error.hpp"
#include "lcq/ideal.hpp"
#include "lcq/json_io.hpp"
#include "lcq/neuro.hpp"
#include "lcq/planner.hpp"
#include "lcq/synth.hpp"

namespace lcq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

// Manifest -----------------------------------------------------------------------

std::uint64_t fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string RunManifest::canonical_json() const {
    json j{{"command", command},
           {"inputs", inputs},
           {"overrides", overrides},
           {"seed", seed},
           {"out", out_dir}};
    return j.dump();
}

std::string RunManifest::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_json())));
    return buf;
}

std::string RunManifest::header() const {
    return "lcq manifest " + hash() + " seed " + std::to_string(seed) + " command " + command;
}

namespace {

struct Globals {
    double step = circuit::SimConfig{}.step;
    std::optional<double> end_time;
    std::uint64_t seed = 1;
    std::string out = ".";
};

struct Context {
    Globals globals;
    RunManifest manifest;
    std::ostream &out;
};

std::ofstream open_output(const Context &ctx, const std::string &name) {
    fs::create_directories(ctx.globals.out);
    const fs::path path = fs::path(ctx.globals.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ValidationError("cannot write " + path.string());
    }
    return f;
}

void write_json(const Context &ctx, const std::string &name, json body) {
    body["manifest"] = json::parse(ctx.manifest.canonical_json());
    body["manifest"]["hash"] = ctx.manifest.hash();
    auto f = open_output(ctx, name);
    f << body.dump(2) << '\n';
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ValidationError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fmt(double x) { return format_real(x); }

std::string fmt(std::complex<double> z) {
    std::string s = format_real(z.real());
    const double im = z.imag();
    s += im < 0 ? " - " : " + ";
    return s + format_real(std::abs(im)) + "i";
}

analog::PhaseRule parse_rule(const std::string &s) {
    if (s == "first-order") {
        return analog::PhaseRule::FirstOrder;
    }
    if (s == "snapshot") {
        return analog::PhaseRule::Snapshot;
    }
    throw ValidationError("unknown rule \"" + s + "\" (expected first-order or snapshot)");
}

// `r` or `r@phase`, comma separated.
std::vector<std::complex<double>> parse_amplitudes(const std::string &text) {
    std::vector<std::complex<double>> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto at = item.find('@');
        const double r = parse_angle(item.substr(0, at));
        const double phase = at == std::string::npos ? 0.0 : parse_angle(item.substr(at + 1));
        out.push_back(std::polar(r, phase));
    }
    if (out.empty()) {
        throw ValidationError("empty --input list");
    }
    return out;
}

// gate ---------------------------------------------------------------------------

struct GateArgs {
    std::string kind;
    std::string phi = "pi/2";
    double ratio = 0.1;
    double coupling = 0.1;
    double width = 10.0;
    std::optional<std::string> t1;
    std::string rule = "snapshot";
    std::optional<std::string> input;
    std::size_t sample_every = 10;
    bool no_unitary = false;
};

void cmd_gate(Context &ctx, const GateArgs &a) {
    analog::DesignParams d;
    d.ratio = a.ratio;
    d.coupling = a.coupling;
    d.width = a.width;
    d.rule = parse_rule(a.rule);
    d.validate();
    std::optional<double> t1;
    if (a.t1) {
        t1 = parse_angle(*a.t1);
    }
    const double phi = parse_angle(a.phi);

    analog::GateSchedule s;
    std::size_t default_index = 0;
    if (a.kind == "phase-shift") {
        s = analog::design_phase_shift(phi, d, t1);
        default_index = 1;
    } else if (a.kind == "mixing") {
        s = analog::design_mixing(d, t1);
    } else if (a.kind == "not") {
        s = analog::design_not(d, t1);
    } else if (a.kind == "hadamard") {
        s = analog::compose_hadamard(d);
    } else if (a.kind == "cnot") {
        s = analog::cnot_schedule(d);
        default_index = 2;
    } else if (a.kind == "cz") {
        s = analog::controlled_phase_schedule(kPi, d);
        default_index = 3;
    } else if (a.kind == "czphi") {
        s = analog::controlled_phase_schedule(phi, d);
        default_index = 3;
    } else if (a.kind == "ccz") {
        s = analog::multi_controlled_phase_schedule(3, {1, 2, 3}, kPi, d);
        default_index = 7;
    } else {
        throw ValidationError("unknown gate kind \"" + a.kind + "\"");
    }
    if (ctx.globals.end_time) {
        s.readout_time = *ctx.globals.end_time;
        s.validate();
    }

    std::vector<std::complex<double>> input(s.targets.size(), 0.0);
    if (a.input) {
        input = parse_amplitudes(*a.input);
        if (input.size() != s.targets.size()) {
            throw ValidationError("--input needs " + std::to_string(s.targets.size()) +
                                  " amplitudes");
        }
    } else {
        input[default_index] = 1.0;
    }

    analog::RunOptions opts;
    opts.sim.step = ctx.globals.step;
    opts.reconstruct_unitary = !a.no_unitary;
    const auto report = analog::run_gate(s, input, opts);

    // Full trajectory of the same run for plotting.
    std::vector<std::size_t> res = s.targets;
    res.push_back(s.reference);
    auto amps = input;
    amps.emplace_back(1.0, 0.0);
    circuit::SimConfig sim;
    sim.step = ctx.globals.step;
    sim.end_time = s.readout_time;
    sim.sample_every = a.sample_every;
    const auto traj = circuit::integrate(
        s.network, circuit::state_from_amplitudes(s.network, res, amps, 0.0), sim);

    const std::string header = ctx.manifest.header();
    {
        auto f = open_output(ctx, a.kind + "_trajectory.csv");
        circuit::write_trajectory_csv(f, traj, s.network, header);
    }
    {
        auto f = open_output(ctx, a.kind + "_phases.csv");
        f << "# " << header << '\n' << "time";
        for (std::size_t j : res) {
            f << ",amp" << j << ",phase" << j;
        }
        f << '\n';
        circuit::ExtractOptions loose;
        loose.require_unperturbed = false;
        for (const auto &st : traj) {
            f << fmt(st.time);
            for (std::size_t j : res) {
                const auto z = circuit::resonator_amplitude(st, s.network, j, loose);
                const double amp = std::abs(z);
                f << ',' << fmt(amp) << ',' << fmt(amp > 1e-12 ? reduce_angle(std::arg(z)) : 0.0);
            }
            f << '\n';
        }
    }
    write_json(ctx, a.kind + "_report.json", report_to_json(report));

    ctx.out << "gate " << a.kind << " readout t = " << fmt(s.readout_time) << '\n';
    for (std::size_t j = 0; j < report.after.size(); ++j) {
        ctx.out << "  resonator " << j << ": amplitude " << fmt(report.after[j].amplitude)
                << " phase " << fmt(report.after[j].phase) << '\n';
    }
    if (report.fidelity) {
        ctx.out << "  fidelity " << fmt(*report.fidelity) << '\n';
    }
    for (const auto &w : report.warnings) {
        ctx.out << "  warning: " << w << '\n';
    }
}

// synth --------------------------------------------------------------------------

void cmd_synth(Context &ctx, const std::optional<std::string> &file, std::optional<int> counts) {
    if (!file && !counts) {
        throw ValidationError("synth needs a pattern file or --counts N");
    }
    const std::string header = "# " + ctx.manifest.header() + "\n";
    if (file) {
        std::istringstream in(read_file(*file));
        const auto pattern = synth::read_pattern(in);
        ideal::Program program;
        int n = 0;
        if (const auto *sp = std::get_if<synth::SignPattern>(&pattern)) {
            const auto r = synth::synthesize_rew(*sp);
            program = r.program();
            n = sp->n;
        } else {
            const auto &pp = std::get<synth::PhasePattern>(pattern);
            const auto gates = synth::synthesize_cew(pp);
            program.gates.assign(gates.begin(), gates.end());
            n = pp.n;
        }
        std::vector<ideal::MultiControlledPhase> diag;
        for (const auto &g : program.gates) {
            diag.push_back(std::get<ideal::MultiControlledPhase>(g));
        }
        const auto h = synth::to_hypergraph(n, diag);
        {
            auto f = open_output(ctx, "synth_gates.txt");
            f << header;
            ideal::write_program(f, program);
        }
        {
            auto f = open_output(ctx, "synth_hypergraph.txt");
            f << header;
            synth::write_hypergraph(f, h);
        }
        ctx.out << "N = " << n << ", " << program.gates.size() << " gates";
        if (program.global_phase != 0.0) {
            ctx.out << ", global phase " << fmt(program.global_phase);
        }
        ctx.out << '\n';
        ideal::write_program(ctx.out, program);
    }
    if (counts) {
        const auto c = synth::state_counts(*counts);
        auto f = open_output(ctx, "synth_counts.csv");
        f << header << "n,graph_states,rew_states,hypergraph_states\n"
          << *counts << ',' << c.graph_states << ',' << c.rew_states << ','
          << c.hypergraph_states << '\n';
        ctx.out << "N = " << *counts << ": graph states " << c.graph_states << ", REW states "
                << c.rew_states << ", hypergraph states " << c.hypergraph_states << '\n';
    }
}

// plan ---------------------------------------------------------------------------

using Operand = std::variant<synth::SignPattern, synth::PhasePattern>;

bool looks_like_pattern_record(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string a, b, c;
        if (!(ls >> a)) {
            continue;
        }
        return (ls >> b >> c) && b.find('x') != std::string::npos;
    }
    return false;
}

Operand read_operand(const std::string &path) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    try {
        if (looks_like_pattern_record(text)) {
            const auto ps = neuro::read_patterns(in);
            if (ps.empty()) {
                throw ValidationError("no pattern records");
            }
            const auto &p = ps.front();
            if (p.bipolar()) {
                return plan::to_sign_pattern(p);
            }
            return plan::to_phase_pattern(p);
        }
        auto v = synth::read_pattern(in);
        if (auto *sp = std::get_if<synth::SignPattern>(&v)) {
            return *sp;
        }
        return std::get<synth::PhasePattern>(v);
    } catch (const ValidationError &e) {
        throw ValidationError(path + ": " + e.what());
    }
}

synth::PhasePattern as_phase(const Operand &op) {
    if (const auto *pp = std::get_if<synth::PhasePattern>(&op)) {
        return *pp;
    }
    const auto &sp = std::get<synth::SignPattern>(op);
    synth::PhasePattern p{sp.n, {}};
    for (int s : sp.signs) {
        p.thetas.push_back(s < 0 ? kPi : 0.0);
    }
    return p;
}

struct PlanArgs {
    std::string x;
    std::string w;
    std::string backend = "ideal";
    std::string prune = "none";
    bool sequential = false;
    std::string rule = "snapshot";
    int max_analog_qubits = 4;
};

void cmd_plan(Context &ctx, const PlanArgs &a) {
    const auto x = read_operand(a.x);
    const auto w = read_operand(a.w);
    plan::ResonatorPlan p;
    if (std::holds_alternative<synth::SignPattern>(x) &&
        std::holds_alternative<synth::SignPattern>(w)) {
        p = plan::plan_inner_product(std::get<synth::SignPattern>(x),
                                     std::get<synth::SignPattern>(w));
    } else {
        p = plan::plan_inner_product(as_phase(x), as_phase(w));
    }
    if (a.prune == "input-output") {
        p = plan::prune(p, plan::PruneMode::InputOutput);
    } else if (a.prune == "input-only") {
        p = plan::prune(p, plan::PruneMode::InputOnly);
    } else if (a.prune != "none") {
        throw ValidationError("unknown prune mode \"" + a.prune + "\"");
    }

    plan::ExecuteOptions opts;
    opts.backend = plan::parse_backend(a.backend);
    opts.design.rule = parse_rule(a.rule);
    opts.sim.step = ctx.globals.step;
    opts.simultaneous = !a.sequential;
    opts.max_analog_qubits = a.max_analog_qubits;
    const auto exec = plan::execute(p, opts);

    const std::string header = ctx.manifest.header();
    {
        auto f = open_output(ctx, "plan.txt");
        f << "# " << header << '\n';
        plan::write_plan(f, p);
    }
    {
        auto f = open_output(ctx, "plan_outputs.csv");
        plan::write_outputs_csv(f, exec, p.n, header);
    }
    write_json(ctx, "plan_report.json", execution_to_json(p, exec, opts));

    ctx.out << "N = " << p.n << ", bridges " << p.stats.bridges_pruned << " of "
            << p.stats.bridges_full << ", phase shifts " << p.stats.phase_shifts << '\n';
    ctx.out << "y0 = " << fmt(exec.y[0]) << " (" << plan::backend_name(exec.backend) << ")\n";
}

// recognize ----------------------------------------------------------------------

std::vector<neuro::Pattern> read_pattern_path(const std::string &path) {
    std::vector<std::string> files;
    if (fs::is_directory(path)) {
        for (const auto &e : fs::directory_iterator(path)) {
            if (e.is_regular_file() && e.path().extension() == ".txt") {
                files.push_back(e.path().string());
            }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw ValidationError("no .txt pattern files in " + path);
        }
    } else {
        files.push_back(path);
    }
    std::vector<neuro::Pattern> all;
    for (const auto &f : files) {
        std::istringstream in(read_file(f));
        try {
            auto ps = neuro::read_patterns(in);
            all.insert(all.end(), ps.begin(), ps.end());
        } catch (const ValidationError &e) {
            throw ValidationError(f + ": " + e.what());
        }
    }
    return all;
}

struct RecognizeArgs {
    std::string refs;
    std::string inputs;
    std::string activation = "step";
    double threshold = 0.5;
    double perturb = 0.0;
};

void cmd_recognize(Context &ctx, const RecognizeArgs &a) {
    neuro::PatternSet refs{"reference", read_pattern_path(a.refs)};
    neuro::PatternSet inputs{"input", read_pattern_path(a.inputs)};
    if (a.perturb > 0.0) {
        for (std::size_t k = 0; k < inputs.patterns.size(); ++k) {
            inputs.patterns[k] =
                neuro::perturb_colors(inputs.patterns[k], a.perturb, ctx.globals.seed + k);
        }
    }
    const auto kind = neuro::parse_activation(a.activation);
    const auto m = neuro::similarity_matrix(refs, inputs);
    const std::string header = ctx.manifest.header();
    {
        auto f = open_output(ctx, "similarity.csv");
        neuro::write_similarity_csv(f, m, header);
    }
    auto f = open_output(ctx, "recognition.csv");
    f << "# " << header << '\n' << "input,recognized,re,im,activation\n";
    ctx.out << "input -> recognized (similarity)\n";
    for (std::size_t c = 0; c < inputs.patterns.size(); ++c) {
        const auto labels = neuro::recognize(inputs.patterns[c], refs);
        std::string joined;
        for (const auto &l : labels) {
            joined += (joined.empty() ? "" : "|") + l;
        }
        const auto &best = refs.find(labels.front());
        const auto sim = neuro::pixel_inner(best, inputs.patterns[c]);
        const double act = neuro::activation(kind, sim, a.threshold);
        f << inputs.patterns[c].label << ',' << joined << ',' << fmt(sim.real()) << ','
          << fmt(sim.imag()) << ',' << fmt(act) << '\n';
        ctx.out << "  " << inputs.patterns[c].label << " -> " << joined << " (" << fmt(sim)
                << ")\n";
    }
}

// corpus -------------------------------------------------------------------------

void cmd_corpus(Context &ctx, const std::string &name) {
    std::vector<neuro::Pattern> refs;
    std::vector<neuro::Pattern> inputs;
    if (name == "digits" || name == "digits-verbatim") {
        const bool verbatim = name == "digits-verbatim";
        refs = neuro::digit_references(verbatim).patterns;
        inputs = neuro::digit_inputs(verbatim).patterns;
    } else if (name == "colors") {
        refs = {neuro::color_wheel()};
        auto in = neuro::perturb_colors(refs.front(), 0.2, ctx.globals.seed);
        in.label = "wheel-perturbed";
        inputs = {in};
    } else {
        throw ValidationError("unknown corpus \"" + name +
                              "\" (expected digits, digits-verbatim or colors)");
    }
    const std::string header = "# " + ctx.manifest.header() + "\n";
    {
        auto f = open_output(ctx, name + "_reference.txt");
        f << header;
        neuro::write_patterns(f, refs);
    }
    {
        auto f = open_output(ctx, name + "_input.txt");
        f << header;
        neuro::write_patterns(f, inputs);
    }
    ctx.out << "wrote " << refs.size() << " reference and " << inputs.size()
            << " input patterns to " << ctx.globals.out << '\n';
}

void record_overrides(const CLI::App &app, RunManifest &m) {
    for (const CLI::Option *opt : app.get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help" || opt->get_name().empty()) {
            continue;
        }
        std::string value;
        for (const auto &r : opt->results()) {
            value += (value.empty() ? "" : " ") + r;
        }
        m.overrides[opt->get_name()] = value;
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulate quantum gates on networks of LC resonators"};
    app.name("lcq");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--step", g.step, "Integration step in units of 1/omega0");
    app.add_option("--end-time", g.end_time, "Simulation end (readout) time");
    app.add_option("--seed", g.seed, "Seed for randomized experiments");
    app.add_option("--out", g.out, "Output directory");

    GateArgs ga;
    auto *gate = app.add_subcommand("gate", "Simulate one analog gate");
    gate->add_option("kind", ga.kind,
                     "phase-shift | mixing | not | hadamard | cnot | cz | ccz | czphi")
        ->required();
    gate->add_option("--phi", ga.phi, "Phase angle (radians or pi/k)");
    gate->add_option("--ratio", ga.ratio, "Capacitance modulation C1/C0");
    gate->add_option("--coupling", ga.coupling, "Bridge coupling L/L1");
    gate->add_option("--width", ga.width, "Pulse smoothing width T");
    gate->add_option("--t1", ga.t1, "Start of the (first) pulse");
    gate->add_option("--rule", ga.rule, "Pulse duration rule: snapshot | first-order");
    gate->add_option("--input", ga.input, "Initial amplitudes, e.g. 1,0 or 1@pi/2,0");
    gate->add_option("--sample-every", ga.sample_every, "Trajectory CSV decimation")
        ->check(CLI::PositiveNumber);
    gate->add_flag("--no-unitary", ga.no_unitary, "Skip unitary reconstruction");

    std::optional<std::string> synth_file;
    std::optional<int> synth_counts;
    auto *synth = app.add_subcommand("synth", "Synthesize a sign or phase pattern");
    synth->add_option("pattern", synth_file, "Pattern file (one entry per line)");
    synth->add_option("--counts", synth_counts, "Print state counts for N qubits");

    PlanArgs pa;
    auto *plan = app.add_subcommand("plan", "Plan and execute an inner product");
    plan->add_option("--x", pa.x, "Input pattern file")->required();
    plan->add_option("--w", pa.w, "Weight pattern file")->required();
    plan->add_option("--backend", pa.backend, "ideal | analog");
    plan->add_option("--prune", pa.prune, "none | input-output | input-only");
    plan->add_flag("--sequential", pa.sequential, "Run bridge pairs one after another");
    plan->add_option("--rule", pa.rule, "Analog pulse duration rule: snapshot | first-order");
    plan->add_option("--max-analog-qubits", pa.max_analog_qubits, "Analog backend size limit");

    RecognizeArgs ra;
    auto *rec = app.add_subcommand("recognize", "Similarity table and template recognition");
    rec->add_option("--refs", ra.refs, "Reference pattern file or directory")->required();
    rec->add_option("--inputs", ra.inputs, "Input pattern file or directory")->required();
    rec->add_option("--activation", ra.activation,
                    "step | linear | sigmoid | ramp | complex-modulus");
    rec->add_option("--threshold", ra.threshold, "Activation threshold h");
    rec->add_option("--perturb", ra.perturb, "Random color perturbation epsilon of the inputs");

    std::string corpus_name;
    auto *corpus = app.add_subcommand("corpus", "Write a bundled pattern corpus");
    corpus->add_option("name", corpus_name, "digits | digits-verbatim | colors")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    RunManifest m;
    m.seed = g.seed;
    m.out_dir = g.out;
    record_overrides(app, m);
    Context ctx{g, {}, out};
    try {
        if (!(g.step > 0.0)) {
            throw ValidationError("--step must be positive");
        }
        if (*gate) {
            m.command = "gate " + ga.kind;
            record_overrides(*gate, m);
            ctx.manifest = m;
            cmd_gate(ctx, ga);
        } else if (*synth) {
            m.command = "synth";
            if (synth_file) {
                m.inputs.push_back(*synth_file);
            }
            record_overrides(*synth, m);
            ctx.manifest = m;
            cmd_synth(ctx, synth_file, synth_counts);
        } else if (*plan) {
            m.command = "plan";
            m.inputs = {pa.x, pa.w};
            record_overrides(*plan, m);
            ctx.manifest = m;
            cmd_plan(ctx, pa);
        } else if (*rec) {
            m.command = "recognize";
            m.inputs = {ra.refs, ra.inputs};
            record_overrides(*rec, m);
            ctx.manifest = m;
            cmd_recognize(ctx, ra);
        } else if (*corpus) {
            m.command = "corpus " + corpus_name;
            record_overrides(*corpus, m);
            ctx.manifest = m;
            cmd_corpus(ctx, corpus_name);
        }
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    if (!ctx.manifest.command.empty()) {
        auto f = open_output(ctx, "manifest.json");
        json j = json::parse(ctx.manifest.canonical_json());
        j["hash"] = ctx.manifest.hash();
        f << j.dump(2) << '\n';
    }
    return kExitOk;
}

} // namespace lcq::cli
