// sq2: one binary for the module computations — validation, Ext charts,
// tensor/dual/suspension plumbing, exterior-algebra decompositions, weight
// summands of the quotient coalgebra, the choice-vector enumeration, the
// realizability criteria, chart rendering, and the reproduction suite.
//
// Every run echoes its flags in a "# sq2 ..." header on stdout; files named
// by -o and --svg receive pure payload bytes so they stay diffable.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "sq2/bg.hpp"
#include "sq2/chart.hpp"
#include "sq2/eq2.hpp"
#include "sq2/module.hpp"
#include "sq2/resolve.hpp"
#include "sq2/roth.hpp"
#include "sq2/steenrod.hpp"
#include "sq2/tmf_e1.hpp"
#include "sq2/toda.hpp"
#include "sq2suite/suite.hpp"

namespace {

using namespace sq2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << bytes;
}

FiniteModule load_module(const std::string& path, const std::string& profile) {
    FiniteModule m = parse_bruner(read_file(path));
    m.set_profile(parse_profile(profile));
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    std::string header = "# sq2";
    for (int i = 1; i < argc; ++i) header += std::string(" ") + argv[i];

    CLI::App app{"exact module computations over the mod-2 Steenrod algebra"};
    app.require_subcommand(1);
    int exit_code = 0;

    // validate ---------------------------------------------------------------
    std::string v_module, v_profile = "A";
    auto* validate_cmd = app.add_subcommand("validate", "check a module file against its algebra");
    validate_cmd->add_option("--module", v_module, "module definition file")->required();
    validate_cmd->add_option("--profile", v_profile, "coefficient algebra: A, A0..A9, EQ0..EQ9");
    validate_cmd->callback([&] {
        std::cout << header << '\n';
        FiniteModule m = load_module(v_module, v_profile);
        auto violations = validate(m);
        std::cout << v_module << ": dim " << m.dim() << " over " << m.profile().to_string()
                  << '\n';
        for (const std::string& v : violations) std::cout << "violation: " << v << '\n';
        std::cout << (violations.empty() ? "valid" : "invalid") << '\n';
        if (!violations.empty()) exit_code = 1;
    });

    // ext --------------------------------------------------------------------
    std::string e_module, e_profile = "A", e_out, e_svg, e_title;
    int e_max_s = 0, e_max_t = 0;
    bool e_self = false;
    auto* ext_cmd = app.add_subcommand("ext", "Ext chart from a minimal resolution");
    ext_cmd->add_option("--module", e_module, "module definition file")->required();
    ext_cmd->add_option("--profile", e_profile, "coefficient algebra: A, A0..A9, EQ0..EQ9");
    ext_cmd->add_flag("--self", e_self, "Ext into the module itself instead of the ground field");
    ext_cmd->add_option("--max-s", e_max_s, "homological degree cap")->required();
    ext_cmd->add_option("--max-t", e_max_t, "internal degree cap")->required();
    ext_cmd->add_option("-o,--out", e_out, "write the TSV here instead of stdout");
    ext_cmd->add_option("--svg", e_svg, "also render the chart to this SVG file");
    ext_cmd->add_option("--title", e_title, "chart title for the SVG");
    ext_cmd->callback([&] {
        std::cout << header << '\n';
        FiniteModule m = load_module(e_module, e_profile);
        std::map<std::pair<int, int>, int> dims;
        if (e_self)
            dims = ext_self(m, e_max_s, e_max_t).ext_table();
        else
            dims = ext_dims(m, e_max_s, e_max_t);
        std::string tsv = ext_tsv(dims);
        if (e_out.empty()) {
            std::cout << tsv;
        } else {
            write_file(e_out, tsv);
            std::cout << "wrote " << e_out << '\n';
        }
        if (!e_svg.empty()) {
            ChartStyle style;
            style.title = e_title;
            write_file(e_svg, chart_svg(ext_points(dims), {}, style));
            std::cout << "wrote " << e_svg << '\n';
        }
    });

    // tensor -----------------------------------------------------------------
    std::string t_left, t_right, t_out, t_profile = "A";
    auto* tensor_cmd = app.add_subcommand("tensor", "tensor product of two module files");
    tensor_cmd->add_option("-a", t_left, "left factor")->required();
    tensor_cmd->add_option("-b", t_right, "right factor")->required();
    tensor_cmd->add_option("-o,--out", t_out, "output module file")->required();
    tensor_cmd->add_option("--profile", t_profile, "coefficient algebra of both factors");
    tensor_cmd->callback([&] {
        std::cout << header << '\n';
        FiniteModule prod = tensor(load_module(t_left, t_profile), load_module(t_right, t_profile));
        write_file(t_out, write_bruner(prod));
        std::cout << "wrote " << t_out << " (dim " << prod.dim() << ")\n";
    });

    // dual -------------------------------------------------------------------
    std::string d_module, d_out, d_profile = "A";
    auto* dual_cmd = app.add_subcommand("dual", "linear dual with negated degrees");
    dual_cmd->add_option("--module", d_module, "module definition file")->required();
    dual_cmd->add_option("-o,--out", d_out, "output module file")->required();
    dual_cmd->add_option("--profile", d_profile, "coefficient algebra");
    dual_cmd->callback([&] {
        std::cout << header << '\n';
        FiniteModule dm = dual_module(load_module(d_module, d_profile));
        write_file(d_out, write_bruner(dm));
        std::cout << "wrote " << d_out << " (dim " << dm.dim() << ")\n";
    });

    // suspend ----------------------------------------------------------------
    std::string s_module, s_out;
    int s_shift = 0;
    auto* suspend_cmd = app.add_subcommand("suspend", "shift all degrees by t");
    suspend_cmd->add_option("--module", s_module, "module definition file")->required();
    suspend_cmd->add_option("--t", s_shift, "degree shift")->required();
    suspend_cmd->add_option("-o,--out", s_out, "output module file")->required();
    suspend_cmd->callback([&] {
        std::cout << header << '\n';
        FiniteModule sm = suspend(load_module(s_module, "A"), s_shift);
        write_file(s_out, write_bruner(sm));
        std::cout << "wrote " << s_out << " (dim " << sm.dim() << ")\n";
    });

    // eq2 --------------------------------------------------------------------
    auto* eq2_cmd = app.add_subcommand("eq2", "structure over the exterior algebra E(Q2)");
    eq2_cmd->require_subcommand(1);
    std::string q_module, q_profile = "EQ2";
    auto* decomp_cmd = eq2_cmd->add_subcommand("decompose", "split into E(Q2) and F2 summands");
    decomp_cmd->add_option("--module", q_module, "module definition file")->required();
    decomp_cmd->add_option("--profile", q_profile, "coefficient algebra carrying the Q2 action");
    decomp_cmd->callback([&] {
        std::cout << header << '\n';
        std::cout << decomposition_to_string(decompose(load_module(q_module, q_profile))) << '\n';
    });

    // bg ---------------------------------------------------------------------
    int g_j = 0;
    std::string g_out;
    auto* bg_cmd = app.add_subcommand("bg", "weight-8j summand of the quotient coalgebra");
    bg_cmd->add_option("--j", g_j, "weight index (0..4)")->required();
    bg_cmd->add_option("-o,--out", g_out, "output module file")->required();
    bg_cmd->callback([&] {
        std::cout << header << '\n';
        const FiniteModule& m = bg_module(g_j);
        write_file(g_out, write_bruner(m));
        std::cout << "wrote " << g_out << " (dim " << m.dim() << ")\n";
    });

    // algtmf -----------------------------------------------------------------
    int a_max_stem = 0, a_max_s = 0, a_max_j = 3, a_workers = 1;
    bool a_self = false;
    std::string a_out, a_svg, a_title;
    auto* algtmf_cmd = app.add_subcommand("algtmf", "assemble the filtered chart page");
    algtmf_cmd->add_flag("--self", a_self, "the self-smash page (32 translated copies)");
    algtmf_cmd->add_option("--max-stem", a_max_stem, "stem cap")->required();
    algtmf_cmd->add_option("--max-s", a_max_s, "homological degree cap")->required();
    algtmf_cmd->add_option("--max-j", a_max_j, "largest weight summand available");
    algtmf_cmd->add_option("--workers", a_workers, "worker threads for the composition fan-out");
    algtmf_cmd->add_option("-o,--out", a_out, "write the TSV here instead of stdout");
    algtmf_cmd->add_option("--svg", a_svg, "also render the chart to this SVG file");
    algtmf_cmd->add_option("--title", a_title, "chart title for the SVG");
    algtmf_cmd->callback([&] {
        std::cout << header << '\n';
        E1Page page = a_self ? assemble_e1_self(a_max_stem, a_max_s, a_max_j, a_workers)
                             : assemble_e1(a_max_stem, a_max_s, a_max_j, a_workers);
        page = apply_known_differentials(assign_may_names(std::move(page)));
        auto points = page_points(page);
        std::string tsv = chart_tsv(points);
        if (a_out.empty()) {
            std::cout << tsv;
        } else {
            write_file(a_out, tsv);
            std::cout << "wrote " << a_out << '\n';
        }
        if (!a_svg.empty()) {
            ChartStyle style;
            style.title = a_title;
            write_file(a_svg, chart_svg(points, page_arrows(page), style));
            std::cout << "wrote " << a_svg << '\n';
        }
    });

    // roth -------------------------------------------------------------------
    auto* roth_cmd = app.add_subcommand("roth", "the 2^18 choice-vector enumeration");
    roth_cmd->require_subcommand(1);

    int r_workers = 1;
    auto* count_cmd = roth_cmd->add_subcommand("count", "count admissible choice vectors");
    count_cmd->add_option("--workers", r_workers, "worker threads");
    count_cmd->callback([&] {
        std::cout << header << '\n';
        std::cout << enumerate_valid(r_workers).valid.size() << '\n';
    });

    std::string rm_dir;
    bool rm_cond = false;
    int rm_workers = 1;
    auto* emit_cmd = roth_cmd->add_subcommand("emit", "write every admissible module file");
    emit_cmd->add_option("--out-dir", rm_dir, "directory for the module files")->required();
    emit_cmd->add_flag("--require-cond-a", rm_cond,
                       "keep only modules passing the quotient condition");
    emit_cmd->add_option("--workers", rm_workers, "worker threads");
    emit_cmd->callback([&] {
        std::cout << header << '\n';
        std::filesystem::create_directories(rm_dir);
        RothScan scan = enumerate_valid(rm_workers);
        std::atomic<size_t> next{0};
        std::atomic<int> written{0};
        int workers = std::max(1, rm_workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= scan.valid.size()) break;
                    SMap s = scan.valid[i];
                    FiniteModule a2 = module_from_smap(s);
                    if (rm_cond && !quotient_condition(a2)) continue;
                    char name[32];
                    std::snprintf(name, sizeof name, "a2-%06u.mod", s);
                    write_file((std::filesystem::path(rm_dir) / name).string(),
                               write_bruner(a2));
                    ++written;
                }
            });
        for (auto& t : pool) t.join();
        std::cout << "wrote " << written << " module files to " << rm_dir << '\n';
    });

    std::string rb_bits, rb_out, rb_b2;
    auto* build_cmd = roth_cmd->add_subcommand("build", "module of one choice vector");
    build_cmd->add_option("--bits", rb_bits, "18 characters of 0/1, highest bit first")
        ->required();
    build_cmd->add_option("-o,--out", rb_out, "output module file")->required();
    build_cmd->add_option("--b2", rb_b2, "also write the rank-32 quotient here");
    build_cmd->callback([&] {
        std::cout << header << '\n';
        if (rb_bits.size() != 18 || rb_bits.find_first_not_of("01") != std::string::npos)
            throw std::runtime_error("--bits wants exactly 18 characters of 0/1");
        SMap s = 0;
        for (char c : rb_bits) s = (s << 1) | SMap(c == '1');
        if (!roth_criterion(s))
            throw std::runtime_error("choice vector " + std::to_string(s) + " is not admissible");
        FiniteModule a2 = module_from_smap(s);
        write_file(rb_out, write_bruner(a2));
        std::cout << "wrote " << rb_out << " (choice vector " << s << ")\n";
        if (!rb_b2.empty()) {
            FiniteModule b2 = b2_from_a2(a2);
            write_file(rb_b2, write_bruner(b2));
            std::cout << "wrote " << rb_b2 << " (dim " << b2.dim() << ")\n";
        }
    });

    // toda -------------------------------------------------------------------
    auto* toda_cmd = app.add_subcommand("toda", "realizability criteria");
    toda_cmd->require_subcommand(1);
    std::string td_module;
    int td_criterion = 0, td_s_cap = 10;
    auto* check_cmd = toda_cmd->add_subcommand("check", "run the vanishing-line criteria");
    check_cmd->add_option("--module", td_module, "module definition file")->required();
    check_cmd->add_option("--criterion", td_criterion, "1 or 2 (default: both)")
        ->check(CLI::IsMember({1, 2}));
    check_cmd->add_option("--s-cap", td_s_cap, "check through this homological degree");
    check_cmd->callback([&] {
        std::cout << header << '\n';
        FiniteModule m = load_module(td_module, "A");
        if (td_criterion == 0 || td_criterion == 1) {
            MinimalResolution res =
                minimal_resolution(m, td_s_cap, m.max_degree() + td_s_cap - 2);
            std::cout << "criterion one: " << toda_criterion_one(m, res, td_s_cap).to_string()
                      << '\n';
        }
        if (td_criterion == 0 || td_criterion == 2)
            std::cout << "criterion two: " << toda_criterion_two(m, td_s_cap).to_string() << '\n';
    });

    // uniq-count ---------------------------------------------------------------
    std::string u_module;
    int u_s_cap = 8;
    auto* uniq_cmd = app.add_subcommand("uniq-count", "number of realizations, 2^dim Ext^{2,1}");
    uniq_cmd->add_option("--module", u_module, "module definition file")->required();
    uniq_cmd->add_option("--s-cap", u_s_cap, "verify the count hypothesis through this s");
    uniq_cmd->callback([&] {
        std::cout << header << '\n';
        std::cout << realization_count(load_module(u_module, "A"), u_s_cap) << '\n';
    });

    // chart --------------------------------------------------------------------
    std::string c_in, c_out, c_title;
    int c_min_stem = 0, c_max_stem = -1, c_min_s = 0, c_max_s = -1;
    auto* chart_cmd = app.add_subcommand("chart", "render a chart TSV to SVG");
    chart_cmd->add_option("--in", c_in, "chart TSV (3 or 6 columns)")->required();
    chart_cmd->add_option("-o,--out", c_out, "output SVG file")->required();
    chart_cmd->add_option("--title", c_title, "chart title");
    chart_cmd->add_option("--min-stem", c_min_stem, "left edge of the window");
    chart_cmd->add_option("--max-stem", c_max_stem, "right edge (default: from the data)");
    chart_cmd->add_option("--min-s", c_min_s, "bottom edge of the window");
    chart_cmd->add_option("--max-s", c_max_s, "top edge (default: from the data)");
    chart_cmd->callback([&] {
        std::cout << header << '\n';
        auto points = parse_chart_tsv(read_file(c_in));
        auto arrows = infer_v2_connectors(points);
        ChartStyle style;
        style.title = c_title;
        style.min_stem = c_min_stem, style.max_stem = c_max_stem;
        style.min_s = c_min_s, style.max_s = c_max_s;
        write_file(c_out, chart_svg(points, arrows, style));
        std::cout << "wrote " << c_out << '\n';
    });

    // reproduce ------------------------------------------------------------------
    std::string p_only, p_figures;
    int p_workers = 1;
    auto* repro_cmd = app.add_subcommand("reproduce", "run the full reproduction suite");
    repro_cmd->add_option("--only", p_only, "run a single named check");
    repro_cmd->add_option("--emit-figures", p_figures, "also write the chart artifacts here");
    repro_cmd->add_option("--workers", p_workers, "worker threads");
    repro_cmd->callback([&] {
        std::cout << header << '\n';
        sq2suite::SuiteOptions options;
        options.workers = p_workers;
        options.only = p_only;
        auto results = sq2suite::run_suite(options);
        std::cout << sq2suite::format_results(results);
        if (!p_figures.empty())
            for (const std::string& path : sq2suite::emit_figures(p_figures, p_workers))
                std::cout << "wrote " << path << '\n';
        if (!sq2suite::all_passed(results)) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
