#include "recur.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace {

struct Options {
    std::string eq;
    std::string alpha = "0", beta = "0", A = "0", B = "0";
    std::string z0 = "0", zm1 = "0", x0 = "0";
    std::string window;
    std::string c_grid, line_grid;
    std::string format = "csv";
    long n = -1;
    long n_max = -1;
    long k = 1;
    long samples = 200;
    std::uint64_t seed = 42;
    double rtol = -1.0; // negative means "not set"
    double atol = -1.0;
};

std::string fmt_real(double v) {
    char buf[64];
    size_t len = 0;
    if (recur_format_real(v, buf, sizeof buf, &len) != RECUR_OK) return "?";
    return std::string(buf, len);
}

std::string fmt_cx(recur_complex v) {
    char buf[128];
    size_t len = 0;
    if (recur_format_complex(v, buf, sizeof buf, &len) != RECUR_OK) return "?";
    return std::string(buf, len);
}

std::string csv_cx(recur_complex v) { return fmt_real(v.re) + "," + fmt_real(v.im); }

std::string json_cx(recur_complex v) {
    return "[" + fmt_real(v.re) + "," + fmt_real(v.im) + "]";
}

int flag_error(const std::string& msg) {
    std::fprintf(stderr, "recur: %s\n", msg.c_str());
    return 2;
}

bool parse_cx(const std::string& text, const char* flag, recur_complex& out,
              int& exit_code) {
    if (recur_parse_complex(text.c_str(), &out) == RECUR_OK) return true;
    exit_code =
        flag_error(std::string("invalid complex value for ") + flag + ": '" + text + "'");
    return false;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    size_t start = 0;
    for (;;) {
        size_t pos = s.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

bool parse_grid(const std::string& s, const char* flag,
                std::vector<recur_complex>& out, int& exit_code) {
    for (const std::string& tok : split_list(s)) {
        recur_complex v;
        if (!parse_cx(tok, flag, v, exit_code)) return false;
        out.push_back(v);
    }
    return true;
}

enum class Family { riccati, second_order, lyness };

bool family_of(const std::string& eq, Family& fam, int& eq_id, int& exit_code) {
    if (eq.empty()) {
        exit_code = flag_error("--eq is required");
        return false;
    }
    if (eq == "riccati") {
        fam = Family::riccati;
        return true;
    }
    if (eq == "lyness") {
        fam = Family::lyness;
        return true;
    }
    int id = recur_parse_equation(eq.c_str());
    if (id < 0) {
        exit_code = flag_error("unknown equation '" + eq + "'");
        return false;
    }
    fam = Family::second_order;
    eq_id = id;
    return true;
}

const recur_tolerances* tol_ptr(const Options& o, recur_tolerances& buf) {
    if (o.rtol < 0 && o.atol < 0) return nullptr;
    buf = {o.rtol >= 0 ? o.rtol : 1e-9, o.atol >= 0 ? o.atol : 1e-12, 1e-12};
    return &buf;
}

bool format_of(const Options& o, bool& json, int& exit_code) {
    if (o.format == "csv") {
        json = false;
        return true;
    }
    if (o.format == "json") {
        json = true;
        return true;
    }
    exit_code = flag_error("--format must be csv or json");
    return false;
}

struct RiccatiHandle {
    recur_riccati_t* h = nullptr;
    ~RiccatiHandle() { recur_riccati_free(h); }
};
struct SoHandle {
    recur_so_t* h = nullptr;
    ~SoHandle() { recur_so_free(h); }
};
struct PointsHandle {
    recur_points_t* h = nullptr;
    ~PointsHandle() { recur_points_free(h); }
};

bool riccati_params_of(const Options& o, recur_riccati_params& p, int& exit_code) {
    return parse_cx(o.alpha, "--alpha", p.alpha, exit_code) &&
           parse_cx(o.beta, "--beta", p.beta, exit_code) &&
           parse_cx(o.A, "--A", p.A, exit_code) && parse_cx(o.B, "--B", p.B, exit_code);
}

bool so_inputs_of(const Options& o, recur_complex& B, recur_complex& z0,
                  recur_complex& zm1, int& exit_code) {
    return parse_cx(o.B, "--B", B, exit_code) && parse_cx(o.z0, "--z0", z0, exit_code) &&
           parse_cx(o.zm1, "--zm1", zm1, exit_code);
}

int cmd_classify(const Options& o) {
    int exit_code = 0, eq_id = 0;
    Family fam{};
    if (!family_of(o.eq, fam, eq_id, exit_code)) return exit_code;
    if (fam == Family::lyness) return flag_error("classify does not support --eq lyness");
    recur_tolerances tbuf;
    const recur_tolerances* tol = tol_ptr(o, tbuf);

    if (fam == Family::riccati) {
        recur_riccati_params p;
        if (!riccati_params_of(o, p, exit_code)) return exit_code;
        RiccatiHandle rh;
        int rc = recur_riccati_classify(&p, tol, &rh.h);
        if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
        recur_complex R, wm, wp;
        double R_real = 0, phi = 0;
        recur_riccati_constants(rh.h, &R, &wm, &wp, &R_real, &phi);
        std::string out = recur_riccati_case_name_of(rh.h);
        switch (recur_riccati_case(rh.h)) {
            case 5:
                out += " R=" + fmt_cx(R) + " w_minus=" + fmt_cx(wm) +
                       " w_plus=" + fmt_cx(wp);
                break;
            case 6: out += " R=" + fmt_real(R_real); break;
            case 7: out += " R=" + fmt_real(R_real) + " phi=" + fmt_real(phi); break;
            default: break;
        }
        std::printf("%s\n", out.c_str());
        return 0;
    }

    recur_complex B, z0, zm1;
    if (!so_inputs_of(o, B, z0, zm1, exit_code)) return exit_code;
    SoHandle sh;
    int rc = recur_so_classify(eq_id, B, z0, zm1, tol, &sh.h);
    if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
    std::string sub = recur_so_subcase(sh.h);
    recur_complex C, l1, l2, M1, M2, w0, D;
    double rho = 0;
    recur_so_constants(sh.h, &C, &l1, &l2, &M1, &M2, &w0, &D, &rho);
    std::string out = sub;
    bool has_C = sub == "linear" || sub == "iv-a" || sub == "iv-b" || sub == "iv-c" ||
                 sub == "b" || sub == "c" || sub == "d" ||
                 (eq_id == RECUR_EQ7 && sub == "ii");
    if (has_C) out += " C=" + fmt_cx(C);
    if (sub == "iv-a" || sub == "b")
        out += " lambda1=" + fmt_cx(l1) + " lambda2=" + fmt_cx(l2);
    if (sub == "iv-c" || sub == "d") out += " rho=" + fmt_real(rho);
    std::printf("%s\n", out.c_str());
    return 0;
}

int cmd_orbit(const Options& o) {
    int exit_code = 0, eq_id = 0;
    Family fam{};
    if (!family_of(o.eq, fam, eq_id, exit_code)) return exit_code;
    if (o.n < 0) return flag_error("orbit requires --n >= 0");
    bool json = false;
    if (!format_of(o, json, exit_code)) return exit_code;
    recur_tolerances tbuf;
    const recur_tolerances* tol = tol_ptr(o, tbuf);

    if (fam == Family::riccati) {
        recur_riccati_params p;
        recur_complex x0;
        if (!riccati_params_of(o, p, exit_code) ||
            !parse_cx(o.x0, "--x0", x0, exit_code))
            return exit_code;
        RiccatiHandle rh;
        int rc = recur_riccati_classify(&p, tol, &rh.h);
        if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
        if (!json) std::printf("n,x_re,x_im\n");
        recur_complex x = x0;
        for (long i = 0;; ++i) {
            if (json)
                std::printf("{\"n\":%ld,\"x\":%s}\n", i, json_cx(x).c_str());
            else
                std::printf("%ld,%s\n", i, csv_cx(x).c_str());
            if (i == o.n) break;
            recur_complex nx;
            rc = recur_riccati_step(rh.h, x, &nx);
            if (rc == RECUR_SINGULAR) {
                std::fprintf(stderr, "recur: orbit singular at step %ld\n", i + 1);
                return 3;
            }
            if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
            x = nx;
        }
        return 0;
    }

    if (fam == Family::second_order) {
        recur_complex B, z0, zm1;
        if (!so_inputs_of(o, B, z0, zm1, exit_code)) return exit_code;
        if (!json) std::printf("n,z_re,z_im\n");
        recur_complex zn = z0, zm = zm1;
        for (long i = 0;; ++i) {
            if (json)
                std::printf("{\"n\":%ld,\"z\":%s}\n", i, json_cx(zn).c_str());
            else
                std::printf("%ld,%s\n", i, csv_cx(zn).c_str());
            if (i == o.n) break;
            recur_complex nx;
            int rc = recur_so_step_eval(eq_id, B, zn, zm, tol, &nx);
            if (rc == RECUR_SINGULAR) {
                std::fprintf(stderr, "recur: orbit singular at step %ld\n", i + 1);
                return 3;
            }
            if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
            zm = zn;
            zn = nx;
        }
        return 0;
    }

    if (o.k < 1) return flag_error("--k must be >= 1");
    recur_complex alpha;
    if (!parse_cx(o.alpha, "--alpha", alpha, exit_code)) return exit_code;
    std::vector<recur_complex> vals;
    if (!parse_grid(o.window, "--window", vals, exit_code)) return exit_code;
    if (long(vals.size()) != o.k + 1)
        return flag_error("--window must list k+1 comma-separated values");
    if (!json) std::printf("n,x_re,x_im\n");
    for (long i = 0; i <= o.n; ++i) {
        if (size_t(i) >= vals.size()) {
            recur_complex nx;
            int rc = recur_lyness_step(o.k, alpha,
                                       vals.data() + (vals.size() - size_t(o.k) - 1),
                                       size_t(o.k) + 1, tol, &nx);
            if (rc == RECUR_SINGULAR) {
                std::fprintf(stderr, "recur: orbit singular at step %ld\n", i);
                return 3;
            }
            if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
            vals.push_back(nx);
        }
        if (json)
            std::printf("{\"n\":%ld,\"x\":%s}\n", i, json_cx(vals[size_t(i)]).c_str());
        else
            std::printf("%ld,%s\n", i, csv_cx(vals[size_t(i)]).c_str());
    }
    return 0;
}

int cmd_solve(const Options& o) {
    int exit_code = 0, eq_id = 0;
    Family fam{};
    if (!family_of(o.eq, fam, eq_id, exit_code)) return exit_code;
    if (fam == Family::lyness) return flag_error("solve does not support --eq lyness");
    if (o.n < 0) return flag_error("solve requires --n >= 0");
    bool json = false;
    if (!format_of(o, json, exit_code)) return exit_code;
    recur_tolerances tbuf;
    const recur_tolerances* tol = tol_ptr(o, tbuf);

    if (fam == Family::riccati) {
        recur_riccati_params p;
        recur_complex x0;
        if (!riccati_params_of(o, p, exit_code) ||
            !parse_cx(o.x0, "--x0", x0, exit_code))
            return exit_code;
        RiccatiHandle rh;
        int rc = recur_riccati_classify(&p, tol, &rh.h);
        if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
        if (!json) std::printf("n,x_re,x_im\n");
        for (long i = 0; i <= o.n; ++i) {
            recur_complex v;
            long u = 0;
            rc = recur_riccati_closed_form(rh.h, x0, i, &v, &u);
            if (rc == RECUR_UNDEFINED) {
                std::fprintf(stderr, "recur: closed form undefined at step %ld\n", u);
                return 3;
            }
            if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
            if (json)
                std::printf("{\"n\":%ld,\"x\":%s}\n", i, json_cx(v).c_str());
            else
                std::printf("%ld,%s\n", i, csv_cx(v).c_str());
        }
        return 0;
    }

    recur_complex B, z0, zm1;
    if (!so_inputs_of(o, B, z0, zm1, exit_code)) return exit_code;
    SoHandle sh;
    int rc = recur_so_classify(eq_id, B, z0, zm1, tol, &sh.h);
    if (rc == RECUR_ERR_DOMAIN) {
        std::fprintf(stderr, "recur: initial pair has no closed form: %s\n",
                     recur_status_message(rc));
        return 3;
    }
    if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
    if (!json) std::printf("n,z_re,z_im\n");
    for (long i = 0; i <= o.n; ++i) {
        recur_complex v;
        long u = 0;
        rc = recur_so_closed_form(sh.h, i, &v, &u);
        if (rc == RECUR_UNDEFINED) {
            std::fprintf(stderr, "recur: closed form undefined at step %ld\n", u);
            return 3;
        }
        if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
        if (json)
            std::printf("{\"n\":%ld,\"z\":%s}\n", i, json_cx(v).c_str());
        else
            std::printf("%ld,%s\n", i, csv_cx(v).c_str());
    }
    return 0;
}

int cmd_forbidden_list(const Options& o) {
    int exit_code = 0, eq_id = 0;
    Family fam{};
    if (!family_of(o.eq, fam, eq_id, exit_code)) return exit_code;
    if (fam == Family::lyness)
        return flag_error("forbidden-list does not support --eq lyness");
    bool json = false;
    if (!format_of(o, json, exit_code)) return exit_code;
    long n_max = o.n_max >= 0 ? o.n_max : 15;

    if (fam == Family::riccati) {
        recur_riccati_params p;
        if (!riccati_params_of(o, p, exit_code)) return exit_code;
        recur_tolerances tbuf;
        RiccatiHandle rh;
        int rc = recur_riccati_classify(&p, tol_ptr(o, tbuf), &rh.h);
        if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
        if (!json) std::printf("kind,n,x_re,x_im\n");
        int kase = recur_riccati_case(rh.h);
        if (kase == 1) {
            std::printf(json ? "{\"kind\":\"whole-plane\"}\n" : "whole-plane,,,\n");
            return 0;
        }
        if (kase == 2) {
            std::printf(json ? "{\"kind\":\"empty-set\"}\n" : "empty-set,,,\n");
            return 0;
        }
        for (long n = 1; n <= n_max; ++n) {
            int kind = 0;
            recur_complex v;
            rc = recur_riccati_forbidden_point(rh.h, n, &kind, &v);
            if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
            if (kind == RECUR_FORBIDDEN_POINT) {
                if (json)
                    std::printf("{\"kind\":\"point\",\"n\":%ld,\"x\":%s}\n", n,
                                json_cx(v).c_str());
                else
                    std::printf("point,%ld,%s\n", n, csv_cx(v).c_str());
            } else {
                if (json)
                    std::printf("{\"kind\":\"no-point\",\"n\":%ld}\n", n);
                else
                    std::printf("no-point,%ld,,\n", n);
            }
        }
        return 0;
    }

    recur_complex B;
    if (!parse_cx(o.B, "--B", B, exit_code)) return exit_code;
    std::vector<recur_complex> cg, lg;
    if (!parse_grid(o.c_grid, "--C-grid", cg, exit_code)) return exit_code;
    const std::string& line_src = o.line_grid.empty() ? o.c_grid : o.line_grid;
    if (!parse_grid(line_src, "--line-grid", lg, exit_code)) return exit_code;
    PointsHandle ph;
    int rc = recur_so_forbidden_sample(eq_id, B, n_max, cg.data(), cg.size(), lg.data(),
                                       lg.size(), &ph.h);
    if (rc == RECUR_ERR_EMPTY_GRID)
        return flag_error("enumeration needs --C-grid or --line-grid values");
    if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
    if (!json) std::printf("kind,branch,n,z0_re,z0_im,zm1_re,zm1_im\n");
    for (size_t i = 0; i < recur_points_count(ph.h); ++i) {
        recur_forbidden_point2d pt;
        recur_points_get(ph.h, i, &pt);
        if (json)
            std::printf("{\"kind\":\"point\",\"branch\":\"%s\",\"n\":%ld,\"z0\":%s,"
                        "\"zm1\":%s}\n",
                        pt.branch, pt.n, json_cx(pt.z0).c_str(), json_cx(pt.zm1).c_str());
        else
            std::printf("point,%s,%ld,%s,%s\n", pt.branch, pt.n, csv_cx(pt.z0).c_str(),
                        csv_cx(pt.zm1).c_str());
    }
    for (size_t i = 0; i < recur_lines_count(ph.h); ++i) {
        recur_forbidden_line ln;
        recur_lines_get(ph.h, i, &ln);
        const char* coord = ln.fixed_coord == 0 ? "z0" : "zm1";
        if (json) {
            std::printf("{\"kind\":\"line\",\"branch\":\"%s\",\"n\":%ld,\"%s\":%s}\n",
                        ln.branch, ln.n, coord, json_cx(ln.value).c_str());
        } else if (ln.fixed_coord == 0) {
            std::printf("line,%s,%ld,%s,,\n", ln.branch, ln.n, csv_cx(ln.value).c_str());
        } else {
            std::printf("line,%s,%ld,,,%s\n", ln.branch, ln.n, csv_cx(ln.value).c_str());
        }
    }
    return 0;
}

int cmd_forbidden_check(const Options& o) {
    int exit_code = 0, eq_id = 0;
    Family fam{};
    if (!family_of(o.eq, fam, eq_id, exit_code)) return exit_code;
    if (fam == Family::lyness)
        return flag_error("forbidden-check does not support --eq lyness");
    long n_max = o.n_max >= 0 ? o.n_max : 15;
    if (n_max < 1) return flag_error("--n-max must be >= 1");
    recur_tolerances tbuf;
    const recur_tolerances* tol = tol_ptr(o, tbuf);

    if (fam == Family::riccati) {
        recur_riccati_params p;
        recur_complex x0;
        if (!riccati_params_of(o, p, exit_code) ||
            !parse_cx(o.x0, "--x0", x0, exit_code))
            return exit_code;
        RiccatiHandle rh;
        int rc = recur_riccati_classify(&p, tol, &rh.h);
        if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
        long n = 0;
        rc = recur_riccati_forbidden_contains(rh.h, x0, n_max, &n);
        if (rc == RECUR_OK)
            std::printf("member n=%ld\n", n);
        else if (rc == RECUR_NOT_FOUND)
            std::printf("not-member\n");
        else
            return flag_error(recur_status_message(rc));
        return 0;
    }

    recur_complex B, z0, zm1;
    if (!so_inputs_of(o, B, z0, zm1, exit_code)) return exit_code;
    const char* branch = nullptr;
    long n = 0;
    int rc = recur_so_forbidden_contains(eq_id, B, z0, zm1, n_max, tol, &branch, &n);
    if (rc == RECUR_OK)
        std::printf("member branch=%s n=%ld\n", branch, n);
    else if (rc == RECUR_NOT_FOUND)
        std::printf("not-member\n");
    else
        return flag_error(recur_status_message(rc));
    return 0;
}

int cmd_invariant(const Options& o) {
    int exit_code = 0, eq_id = 0;
    Family fam{};
    if (!family_of(o.eq, fam, eq_id, exit_code)) return exit_code;
    if (fam == Family::riccati)
        return flag_error("invariant requires --eq eq4..eq9 or lyness");
    recur_tolerances tbuf;
    const recur_tolerances* tol = tol_ptr(o, tbuf);

    if (fam == Family::second_order) {
        recur_complex B, z0, zm1;
        if (!so_inputs_of(o, B, z0, zm1, exit_code)) return exit_code;
        if (o.n_max >= 1) {
            double drift = 0;
            int rc = recur_so_invariant_drift(eq_id, B, z0, zm1, o.n_max, tol, &drift);
            if (rc == RECUR_UNDEFINED) {
                std::printf("undefined\n");
                return 0;
            }
            if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
            std::printf("%s\n", fmt_real(drift).c_str());
            return 0;
        }
        recur_complex v;
        int rc = recur_so_invariant(eq_id, B, z0, zm1, &v);
        if (rc == RECUR_UNDEFINED) {
            std::printf("undefined\n");
            return 0;
        }
        if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
        std::printf("%s\n", fmt_cx(v).c_str());
        return 0;
    }

    if (o.k < 1) return flag_error("--k must be >= 1");
    recur_complex alpha;
    if (!parse_cx(o.alpha, "--alpha", alpha, exit_code)) return exit_code;
    std::vector<recur_complex> w;
    if (!parse_grid(o.window, "--window", w, exit_code)) return exit_code;
    if (long(w.size()) != o.k + 1)
        return flag_error("--window must list k+1 comma-separated values");
    recur_complex v;
    int rc = recur_lyness_invariant(o.k, alpha, w.data(), w.size(), &v);
    if (rc == RECUR_ERR_DOMAIN) {
        std::printf("undefined\n");
        return 0;
    }
    if (rc != RECUR_OK) return flag_error(recur_status_message(rc));
    std::printf("%s\n", fmt_cx(v).c_str());
    return 0;
}

int cmd_verify(const Options& o) {
    double rtol = o.rtol >= 0 ? o.rtol : 1e-8;
    long n_max = o.n_max >= 0 ? o.n_max : 25;
    if (o.samples < 1) return flag_error("--samples must be >= 1");
    recur_tolerances vt{rtol, 1e-12, 1e-12};

    int only_eq = 0;
    if (!o.eq.empty() && o.eq != "riccati" && o.eq != "lyness") {
        only_eq = recur_parse_equation(o.eq.c_str());
        if (only_eq < 0) return flag_error("unknown equation '" + o.eq + "'");
    }
    bool run_riccati = o.eq.empty() || o.eq == "riccati";
    bool run_lyness = o.eq.empty() || o.eq == "lyness";

    bool all_ok = true;
    long checks = 0;
    auto emit = [&](const std::string& fam, long i, const std::string& detail, bool ok) {
        std::printf("%s sample=%ld %s %s\n", fam.c_str(), i, detail.c_str(),
                    ok ? "ok" : "FAIL");
        if (!ok) all_ok = false;
        ++checks;
    };
    auto report_ok = [](int rc, const recur_report& r) {
        return rc == RECUR_OK && r.first_disagreement < 0 && r.oracle_singular_at < 0 &&
               r.closed_form_singular_at < 0;
    };

    if (run_riccati) {
        for (int kase = 2; kase <= 7; ++kase) {
            std::string fam = "riccati-case" + std::to_string(kase);
            for (long i = 0; i < o.samples; ++i) {
                recur_riccati_params p;
                recur_complex x0;
                if (recur_sample_riccati(kase, o.seed, i, &p, &x0) != RECUR_OK) {
                    emit(fam, i, "sample failed", false);
                    continue;
                }
                RiccatiHandle rh;
                recur_report rep{};
                int rc = recur_riccati_classify(&p, nullptr, &rh.h);
                if (rc == RECUR_OK) rc = recur_verify_riccati(rh.h, x0, n_max, &vt, &rep);
                emit(fam, i, "max_rel_error=" + fmt_real(rep.max_rel_error),
                     report_ok(rc, rep));
            }
        }
    }

    for (int eq = RECUR_EQ4; eq <= RECUR_EQ9; ++eq) {
        if (!o.eq.empty() && only_eq != eq) continue;
        std::string eqname = recur_equation_name_of(eq);
        int cnt = recur_so_subcase_count(eq);
        for (int ci = 0; ci < cnt; ++ci) {
            const char* sub = recur_so_subcase_at(eq, ci);
            std::string fam = eqname + "-" + sub;
            for (long i = 0; i < o.samples; ++i) {
                recur_complex B, z0, zm1;
                if (recur_sample_so(eq, sub, o.seed, i, &B, &z0, &zm1) != RECUR_OK) {
                    emit(fam, i, "sample failed", false);
                    continue;
                }
                SoHandle sh;
                recur_report rep{};
                int rc = recur_so_classify(eq, B, z0, zm1, nullptr, &sh.h);
                if (rc == RECUR_OK) rc = recur_verify_so(sh.h, n_max, &vt, &rep);
                emit(fam, i, "max_rel_error=" + fmt_real(rep.max_rel_error),
                     report_ok(rc, rep));
            }
        }
        std::string fam = eqname + "-drift";
        for (long i = 0; i < o.samples; ++i) {
            recur_complex B, z0, zm1;
            if (recur_sample_so_generic(eq, o.seed, i, &B, &z0, &zm1) != RECUR_OK) {
                emit(fam, i, "sample failed", false);
                continue;
            }
            recur_complex I0{};
            double drift = 0;
            int rc = recur_so_invariant(eq, B, z0, zm1, &I0);
            if (rc == RECUR_OK)
                rc = recur_so_invariant_drift(eq, B, z0, zm1, 40, nullptr, &drift);
            double scale = std::max(1.0, std::hypot(I0.re, I0.im));
            emit(fam, i, "drift=" + fmt_real(drift),
                 rc == RECUR_OK && drift <= 1e-9 * scale);
        }
    }

    if (run_lyness) {
        const recur_complex alpha{1.0, 0.0};
        for (long k = 1; k <= 3; ++k) {
            std::string fam = "lyness-k" + std::to_string(k);
            for (long i = 0; i < o.samples; ++i) {
                double w[4];
                size_t len = 0;
                if (recur_sample_lyness(k, o.seed, i, w, 4, &len) != RECUR_OK) {
                    emit(fam, i, "sample failed", false);
                    continue;
                }
                std::vector<recur_complex> vals;
                for (size_t j = 0; j < len; ++j) vals.push_back({w[j], 0.0});
                recur_complex I0;
                int rc = recur_lyness_invariant(k, alpha, vals.data(), vals.size(), &I0);
                double drift = 0, period_err = 0;
                bool ok = rc == RECUR_OK;
                for (long s = 0; ok && s < 30; ++s) {
                    recur_complex nx;
                    rc = recur_lyness_step(k, alpha,
                                           vals.data() + (vals.size() - size_t(k) - 1),
                                           size_t(k) + 1, nullptr, &nx);
                    if (rc != RECUR_OK) {
                        ok = false;
                        break;
                    }
                    vals.push_back(nx);
                    recur_complex In;
                    rc = recur_lyness_invariant(k, alpha,
                                                vals.data() + (vals.size() - size_t(k) - 1),
                                                size_t(k) + 1, &In);
                    if (rc != RECUR_OK) {
                        ok = false;
                        break;
                    }
                    drift = std::max(drift, std::hypot(In.re - I0.re, In.im - I0.im));
                }
                if (ok && k == 1) {
                    for (size_t j = 0; j + 5 < vals.size(); ++j)
                        period_err = std::max(period_err,
                                              std::hypot(vals[j + 5].re - vals[j].re,
                                                         vals[j + 5].im - vals[j].im));
                    ok = period_err <= 1e-9;
                }
                ok = ok && drift <= 1e-10;
                std::string detail = "drift=" + fmt_real(drift);
                if (k == 1) detail += " period_err=" + fmt_real(period_err);
                emit(fam, i, detail, ok);
            }
        }
    }

    std::printf("verify: %s checks=%ld\n", all_ok ? "pass" : "fail", checks);
    return all_ok ? 0 : 1;
}

void add_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--eq", o.eq, "equation family: riccati, eq4..eq9, lyness");
    cmd->add_option("--alpha", o.alpha, "numerator constant (complex)");
    cmd->add_option("--beta", o.beta, "numerator coefficient (complex)");
    cmd->add_option("--A", o.A, "denominator constant (complex)");
    cmd->add_option("--B", o.B, "map parameter (complex)");
    cmd->add_option("--x0", o.x0, "initial value (complex)");
    cmd->add_option("--z0", o.z0, "initial value z_0 (complex)");
    cmd->add_option("--zm1", o.zm1, "initial value z_{-1} (complex)");
    cmd->add_option("--n", o.n, "number of steps");
    cmd->add_option("--n-max", o.n_max, "index horizon");
    cmd->add_option("--C-grid", o.c_grid, "comma-separated invariant constants");
    cmd->add_option("--line-grid", o.line_grid,
                    "comma-separated free-coordinate samples (defaults to --C-grid)");
    cmd->add_option("--format", o.format, "csv or json");
    cmd->add_option("--rtol", o.rtol, "relative tolerance");
    cmd->add_option("--atol", o.atol, "absolute tolerance");
    cmd->add_option("--seed", o.seed, "sampling seed");
    cmd->add_option("--samples", o.samples, "draws per family");
    cmd->add_option("--k", o.k, "window order for lyness");
    cmd->add_option("--window", o.window, "comma-separated initial window");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational recurrence toolkit: classification, closed forms, "
                 "forbidden sets, verification"};
    app.require_subcommand(1);
    Options o;
    struct Cmd {
        const char* name;
        int (*fn)(const Options&);
        const char* desc;
    };
    const Cmd cmds[] = {
        {"classify", cmd_classify, "print the case or subcase tag and derived constants"},
        {"orbit", cmd_orbit, "iterate the map and print one row per index"},
        {"solve", cmd_solve, "evaluate the closed form and print one row per index"},
        {"forbidden-list", cmd_forbidden_list, "enumerate forbidden initial data"},
        {"forbidden-check", cmd_forbidden_check, "test membership in the forbidden set"},
        {"verify", cmd_verify, "seeded closed-form and invariant verification"},
        {"invariant", cmd_invariant, "print the invariant value or its drift"},
    };
    for (const Cmd& c : cmds) add_flags(app.add_subcommand(c.name, c.desc), o);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    auto parsed = app.get_subcommands();
    if (parsed.empty()) return 2;
    for (const Cmd& c : cmds)
        if (parsed.front()->get_name() == c.name) return c.fn(o);
    return 2;
}
