#include "qcsp/harness.hpp"

#include "qcsp/feasibility.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qcsp {

namespace {

char task_glyph(int id) {
    static const char glyphs[] =
        "123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    return glyphs[(id - 1) % (sizeof(glyphs) - 1)];
}

std::string f1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

void emit_text(std::ostream& out, const Instance& inst, const Schedule& sched,
               Time cmax) {
    const int width = 72;
    const Time scale = std::max<Time>(1, (cmax + width - 1) / width);
    const int cols = static_cast<int>((cmax + scale - 1) / scale);
    const auto by_crane = per_crane_tasks(inst, sched.assignment);

    size_t label_width = 0;
    for (int k = 1; k <= inst.m; ++k)
        label_width = std::max(label_width, 2 + std::to_string(k).size());

    for (int k = 1; k <= inst.m; ++k) {
        std::string lane(cols, '.');
        for (int i : by_crane[k - 1]) {
            int a = static_cast<int>(sched.start[i - 1] / scale);
            int b = static_cast<int>((sched.completion[i - 1] + scale - 1) / scale);
            b = std::min(std::max(b, a + 1), cols);
            for (int col = a; col < b; ++col) lane[col] = task_glyph(i);
        }
        std::string label = "QC" + std::to_string(k);
        label.resize(label_width, ' ');
        out << label << " |" << lane << "|\n";
    }
    out << "scale: 1 column = " << scale << " time unit(s), tasks shown as 1-9a-zA-Z\n";
    out << "C_max = " << cmax << "\n";
}

void emit_svg(std::ostream& out, const Instance& inst, const Schedule& sched,
              Time cmax) {
    static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                    "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
                                    "#9c755f", "#bab0ac"};
    const int margin_left = 60, margin_top = 30, margin_right = 40;
    const int lane_h = 36, lane_gap = 12, axis_h = 40, plot_w = 900;
    const int width = margin_left + plot_w + margin_right;
    const int axis_y = margin_top + inst.m * (lane_h + lane_gap) + 8;
    const int height = axis_y + axis_h;
    const double px = double(plot_w) / double(std::max<Time>(cmax, 1));
    const auto by_crane = per_crane_tasks(inst, sched.assignment);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";

    for (int k = 1; k <= inst.m; ++k) {
        const int y = margin_top + (k - 1) * (lane_h + lane_gap);
        out << "<rect x=\"" << margin_left << "\" y=\"" << y << "\" width=\"" << plot_w
            << "\" height=\"" << lane_h << "\" fill=\"#f4f4f4\"/>\n";
        out << "<text x=\"" << margin_left - 8 << "\" y=\"" << y + lane_h / 2 + 4
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"13\">QC" << k
            << "</text>\n";
        for (int i : by_crane[k - 1]) {
            const double x = margin_left + double(sched.start[i - 1]) * px;
            const double w =
                std::max(1.0, double(sched.completion[i - 1] - sched.start[i - 1]) * px);
            out << "<rect x=\"" << f1(x) << "\" y=\"" << y + 2 << "\" width=\"" << f1(w)
                << "\" height=\"" << lane_h - 4 << "\" fill=\""
                << palette[(i - 1) % 10] << "\" stroke=\"#333333\"/>\n";
            out << "<text x=\"" << f1(x + w / 2) << "\" y=\"" << y + lane_h / 2 - 1
                << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">T"
                << i << "</text>\n";
            out << "<text x=\"" << f1(x + w / 2) << "\" y=\"" << y + lane_h / 2 + 11
                << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"9\">b"
                << inst.bay[i - 1] << "</text>\n";
        }
    }

    out << "<line x1=\"" << margin_left << "\" y1=\"" << axis_y << "\" x2=\""
        << margin_left + plot_w << "\" y2=\"" << axis_y
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    Time step = 1;
    while (step * 8 < cmax) {
        if (step * 2 * 8 >= cmax) { step *= 2; break; }
        if (step * 5 * 8 >= cmax) { step *= 5; break; }
        step *= 10;
    }
    for (Time t = 0; t <= cmax; t += step) {
        const double x = margin_left + double(t) * px;
        out << "<line x1=\"" << f1(x) << "\" y1=\"" << axis_y << "\" x2=\"" << f1(x)
            << "\" y2=\"" << axis_y + 6 << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << f1(x) << "\" y=\"" << axis_y + 20
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" << t
            << "</text>\n";
    }
    const double x_end = margin_left + double(cmax) * px;
    out << "<line x1=\"" << f1(x_end) << "\" y1=\"" << margin_top - 8 << "\" x2=\""
        << f1(x_end) << "\" y2=\"" << axis_y
        << "\" stroke=\"#cc0000\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    out << "<text x=\"" << f1(x_end) << "\" y=\"" << margin_top - 12
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\" "
           "fill=\"#cc0000\">C_max = "
        << cmax << "</text>\n";
    out << "</svg>\n";
}

} // namespace

void emit_gantt(std::ostream& out, const Instance& inst, const Schedule& sched,
                GanttFormat format) {
    const ViolationReport verdict = check(inst, sched);
    if (!verdict.feasible()) {
        std::ostringstream msg;
        msg << "refusing to draw an infeasible schedule:";
        for (const Violation& v : verdict.violations)
            msg << ' ' << to_string(v.tag) << "(i=" << v.i << ",j=" << v.j << ")";
        throw input_error(msg.str());
    }
    const Time cmax = makespan(sched);
    if (format == GanttFormat::text)
        emit_text(out, inst, sched, cmax);
    else
        emit_svg(out, inst, sched, cmax);
}

} // namespace qcsp
