#include "cylsat/replay.hpp"

#include <json.hpp>

namespace cylsat {

// The scripted induction stages. Formulas are transcribed displays; "note"
// records where the computation verifies something weaker or different than
// the display (sign slips, broken scales, invalid literal data), and the
// match policy says how the comparison is made:
//   exact - alive slots equal the formula times pi (dets: times pi^2)
//   ray   - equal up to one nonzero rational factor, reported
//   locus - vanishing sets coincide on the sample grid
static const char* kStepScriptsJson = R"JSON({
  "steps": [
    {
      "id": "3.3.2-(1,1,q+1)",
      "target": ["1", "1", "q+1"],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["1", "0", "q"], "wk": ["L1*q", "0", "-L3"],
          "m": ["0", "1", "1"], "wm": ["0", "L2", "-L3"],
          "z": ["-1/2*L1*q^2", "-1/2*L2", "-1/2*L3*(q+1)"], "match": "exact",
          "betas": [
            {"w": "wk", "pattern": "**+", "expected": "-1/8"},
            {"w": "wk", "pattern": "**-", "expected": "1/8"},
            {"w": "wm", "pattern": "**+", "expected": "-1/8*q"},
            {"w": "wm", "pattern": "**-", "expected": "1/8*q"}
          ]
        },
        {
          "name": "gamma", "order": "YkZm",
          "k": ["0", "1", "q"], "wk": ["0", "L2*q", "-L3"],
          "m": ["1", "0", "1"], "wm": ["L1", "0", "-L3"],
          "z": ["-1/2*L1", "-1/2*L2*q^2", "-1/2*L3*(q+1)"], "match": "exact"
        },
        {
          "name": "delta", "order": "both",
          "k": ["1", "0", "q-1"], "wk": ["L1*(q-1)", "0", "-L3"],
          "m": ["0", "1", "2"], "wm": ["0", "2*L2", "-L3"],
          "z": ["-1/2*L1*(q-1)^2", "-2*L2", "-1/2*L3*(q+1)"], "match": "exact"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "1/4*(q+1)^2*(q-1)*(L1*L2*q^2+L1*L2-L2*L3-L1*L3)", "match": "exact"},
        {"name": "det(n|alpha|delta)", "cols": ["n", "alpha", "delta"],
         "expected": "1/4*(q+1)*(3*L1*L2*q^2+2*(L1*L2-L1*L3)*q+L1*L3-L1*L2-3*L2*L3)",
         "match": "exact"},
        {"name": "det(n|gamma|delta)", "cols": ["n", "gamma", "delta"],
         "expected": "1/4*(q+1)*(-L1*L2*q^4+2*L1*L2*q^3+(L2*L3+L1*L3-L1*L2)*q^2-2*L1*L3*q+4*L1*L2-4*L2*L3)",
         "match": "exact"}
      ],
      "note": "the third display sums (Y^k.grad)Z^m with (Y^m.grad)Z^k; both readings are computed and the matching one is reported"
    },
    {
      "id": "3.3.2-(1,l,q+1)",
      "target": ["1", "l", "q+1"],
      "loops": [{"var": "l", "from": "2", "to": "q"}],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["1", "l-1", "q"], "wk": ["0", "L2*q", "L3*(1-l)"],
          "m": ["0", "1", "1"], "wm": ["0", "L2", "-L3"],
          "z": ["0", "-1/4*L2*(q-l+1)*(q-1)", "-1/4*L3*(q-l+1)*(l-2)"], "match": "exact",
          "betas": [
            {"w": "wk", "pattern": "*++", "expected": "1/8*(q-l+1)"},
            {"w": "wm", "pattern": "*++", "expected": "1/8*(l-q-1)"}
          ]
        },
        {
          "name": "gamma", "order": "YkZm",
          "k": ["1", "l-1", "q"], "wk": ["L1*q", "0", "-L3"],
          "m": ["0", "1", "1"], "wm": ["0", "L2", "-L3"],
          "z": ["-1/4*L1*q*(q-l+1)", "-1/4*L2", "-1/4*L3*(q-l+2)"], "match": "exact",
          "betas": [
            {"w": "wk", "pattern": "*++", "expected": "-1/8"},
            {"w": "wm", "pattern": "*++", "expected": "1/8*(l-q-1)"}
          ]
        },
        {
          "name": "delta", "order": "YkZm",
          "k": ["0", "l-1", "q"], "wk": ["0", "L2*q", "L3*(1-l)"],
          "m": ["1", "1", "1"], "wm": ["L1", "-L2", "0"],
          "z": ["1/4*L1*(q-l+1)", "-1/4*L2*(q*l-l+1)", "-1/4*L3*(l-1)^2"], "match": "exact"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "-1/16*q*(q-l+1)^2*(L1*L2*q^2-L1*L2-L2*L3-L1*L3*l*(l-2))", "match": "exact"},
        {"name": "det(n|alpha|delta)", "cols": ["n", "alpha", "delta"],
         "expected": "1/16*(q-l+1)^2*(L1*L2*q^2+L2*L3-L1*L2-L1*L3*l*(l-2))", "match": "exact"}
      ],
      "note": "the displayed second choice has m = (1,1,1) and the third k = (1,l-1,q); neither index can reach the target, and the displayed beta values fix the intended data m = (0,1,1) and k = (0,l-1,q)"
    },
    {
      "id": "3.3.3-(n1,n2,q+1)",
      "target": ["n1", "n2", "q+1"],
      "loops": [{"var": "n1", "from": "2", "to": "q"}, {"var": "n2", "from": "2", "to": "q"}],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["n1-1", "n2-1", "q"], "wk": ["0", "L2*q", "L3*(1-n2)"],
          "m": ["1", "1", "1"], "wm": ["0", "L2", "-L3"],
          "z": ["0", "-1/8*L2*(q-n2+1)*(q-1)", "-1/8*L3*(q-n2+1)*(n2-2)"], "match": "exact",
          "betas": [
            {"w": "wk", "pattern": "+++", "expected": "1/8*(q-n2+1)"},
            {"w": "wm", "pattern": "+++", "expected": "1/8*(n2-q-1)"}
          ]
        },
        {
          "name": "gamma", "order": "YkZm",
          "k": ["n1-1", "n2-1", "q"], "wk": ["L1*q", "0", "L3*(1-n1)"],
          "m": ["1", "1", "1"], "wm": ["0", "L2", "-L3"],
          "z": ["-1/8*L1*q*(q-n2+1)", "1/8*L2*(q-n1+1)",
                "1/8*(L3*(1-n1)*(q-n2+1)+L3*(q-n1+1))"], "match": "exact"
        },
        {
          "name": "delta", "order": "YkZm",
          "k": ["n1", "n2-1", "q"], "wk": ["L1*(n2-1)", "-L2*n1", "0"],
          "m": ["0", "1", "1"], "wm": ["0", "L2", "-L3"],
          "z": ["-1/4*L1*(q-n2+1)*(n2-1)", "1/4*L2*n1*(q-n2)", "-1/4*L3*n1"], "match": "exact"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "-1/64*q*(q-n2+1)^2*(L1*L2*q^2-L1*L2-L2*L3*n1*(n1-2)-L1*L3*n2*(n2-2))",
         "match": "exact"},
        {"name": "det(n|alpha|delta)", "cols": ["n", "alpha", "delta"],
         "expected": "-1/32*(n2-1)*(q-n2+1)^2*(L1*L2*q^2-L1*L2-L2*L3*n1^2-L1*L3*n2*(n2-2))",
         "match": "exact"}
      ],
      "note": "the third z-vector carries scale pi/4, not the displayed pi/8 (its determinant scales along); the two determinant displays also swap one column entry between them, and the result polynomials hold with the verified vectors"
    },
    {
      "id": "3.4.1-(q+1,l,0)",
      "target": ["q+1", "l", "0"],
      "loops": [{"var": "l", "from": "1", "to": "q"}],
      "quads": [
        {
          "name": "gamma", "order": "YkZm",
          "k": ["q", "l", "0"], "wk": ["L1*l", "-L2*q", "0"],
          "m": ["1", "0", "0"], "wm": ["0", "0", "1"],
          "z": ["0", "0", "1/2*l"], "match": "ray",
          "betas": [
            {"w": "wk", "pattern": "+**", "expected": "1/8*l"},
            {"w": "wm", "pattern": "***", "expected": "0"}
          ]
        }
      ],
      "note": "computed value is -(pi/2) l on the single alive slot; the displayed sign is the opposite, immaterial under the step's scalar freedom"
    },
    {
      "id": "3.4.1-(q+1,0,l)",
      "target": ["q+1", "0", "l"],
      "loops": [{"var": "l", "from": "1", "to": "q"}],
      "eigen_rays": [
        {"k": ["q+1", "0", "l"], "z": ["l/L3", "0", "(q+1)/L1"]}
      ],
      "note": "the display presents the target eigenfunction itself (two-component reduction); compared as a ray against the canonical realization"
    },
    {
      "id": "3.4.2-(q+1,1,1)",
      "target": ["q+1", "1", "1"],
      "quads": [
        {
          "name": "alpha", "order": "ZkYm",
          "k": ["q", "0", "1"], "wk": ["L1", "0", "-L3*q"],
          "m": ["1", "1", "0"], "wm": ["L1", "-L2", "0"],
          "z": ["1/2*L1*(q+1)", "-1/2*L2", "1/2*L3*q^2"], "match": "exact"
        },
        {
          "name": "gamma", "order": "YkZm",
          "k": ["q", "1", "1"], "wk": ["0", "L2", "-L3"],
          "m": ["1", "0", "0"], "wm": ["0", "0", "L3"],
          "z": ["0", "1/2*L2", "1/2*L3"], "match": "exact"
        },
        {
          "name": "delta", "order": "YkZm",
          "k": ["q", "1", "1"], "wk": ["L1", "0", "-L3*q"],
          "m": ["1", "0", "0"], "wm": ["0", "0", "L3"],
          "z": ["1/2*L1", "0", "1/2*L3*(q-1)"], "match": "exact"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "L2*L3*q^2+L1*L3+L2*L3-L1*L2", "match": "locus"},
        {"name": "det(n|gamma|delta)", "cols": ["n", "gamma", "delta"],
         "expected": "L2*L3*q^2-L2*L3+L1*L3-L1*L2", "match": "locus"}
      ]
    },
    {
      "id": "3.4.2-(q+1,1,l)",
      "target": ["q+1", "1", "l"],
      "loops": [{"var": "l", "from": "2", "to": "q"}],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["q", "1", "l"], "wk": ["0", "L2*l", "-L3"],
          "m": ["1", "0", "0"], "wm": ["0", "0", "L3"],
          "z": ["0", "1/2*L2*l^2", "1/2*L3*l"], "match": "exact"
        },
        {
          "name": "gamma", "order": "YkZm",
          "k": ["q", "1", "l"], "wk": ["L1*l", "0", "-L3*q"],
          "m": ["1", "0", "0"], "wm": ["0", "0", "L3"],
          "z": ["1/2*L1*l^2", "0", "1/2*L3*l*(q-1)"], "match": "exact"
        },
        {
          "name": "delta", "order": "ZkYm",
          "k": ["q", "0", "l"], "wk": ["L1*l", "0", "-L3*q"],
          "m": ["1", "1", "0"], "wm": ["L1", "-L2", "0"],
          "z": ["1/2*L1*l*(q+1)", "-1/2*L2*l", "1/2*L3*q^2"], "match": "exact"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "l^3*(L2*L3*q^2-L2*L3+L1*L3-L1*L2*l^2)", "match": "locus"},
        {"name": "det(n|alpha|delta)", "cols": ["n", "alpha", "delta"],
         "expected": "l^2*(q+1)*(L2*L3*q^2+L2*L3+L1*L3-L1*L2*l)", "match": "locus"}
      ]
    },
    {
      "id": "3.4.2-(q+1,l,1)",
      "target": ["q+1", "l", "1"],
      "loops": [{"var": "l", "from": "2", "to": "q"}],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["q", "l", "1"], "wk": ["0", "L2", "-L3*l"],
          "m": ["1", "0", "0"], "wm": ["0", "0", "L3"],
          "z": ["0", "1/2*L2", "1/2*L3*l"], "match": "exact"
        },
        {
          "name": "gamma", "order": "YkZm",
          "k": ["q", "l", "1"], "wk": ["L1", "0", "-L3*q"],
          "m": ["1", "0", "0"], "wm": ["0", "0", "L3"],
          "z": ["1/2*L1", "0", "1/2*L3*(q-1)"], "match": "exact"
        },
        {
          "name": "delta", "order": "YkZm",
          "k": ["q", "l", "0"], "wk": ["L1*l", "-L2*q", "0"],
          "m": ["1", "0", "1"], "wm": ["L1", "0", "-L3"],
          "z": ["1/2*L1*l*(q+1)", "-1/2*L2*q^2", "1/2*L3*l"], "match": "exact"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "L2*L3*l*q*(q-1)+L1*(L3*l^2-L2)", "match": "locus"},
        {"name": "det(n|alpha|delta)", "cols": ["n", "alpha", "delta"],
         "expected": "L2*L3*q*(q^2+1)+L1*(L3*l^2-L2)*(q+1)", "match": "locus"}
      ],
      "note": "the second display's third slot carries a spurious factor l (the value is l-independent); the third display labels (q,l,0) as the Z operand, but a Z datum with zero third index must have w = (0,0,w3), so the only valid reading takes (q,l,0) as the Y operand"
    },
    {
      "id": "3.4.3-(q+1,n1,n2)",
      "target": ["q+1", "n1", "n2"],
      "loops": [{"var": "n1", "from": "2", "to": "q"}, {"var": "n2", "from": "2", "to": "q"}],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["q", "n1", "n2"], "wk": ["0", "L2*n2", "-L3*n1"],
          "m": ["1", "0", "0"], "wm": ["0", "0", "L3"],
          "z": ["0", "1/2*L2*n2^2", "1/2*L3*n1*n2"], "match": "exact"
        },
        {
          "name": "gamma", "order": "YkZm",
          "k": ["q", "n1", "n2"], "wk": ["L1*n2", "0", "-L3*q"],
          "m": ["1", "0", "0"], "wm": ["0", "0", "L3"],
          "z": ["1/2*L1*n2^2", "0", "1/2*L3*n2*(q-1)"], "match": "exact"
        },
        {
          "name": "delta", "order": "ZkYm",
          "k": ["q", "n1-1", "n2"], "wk": ["L1*(n1-1)", "-L2*q", "0"],
          "m": ["1", "1", "0"], "wm": ["L1", "-L2", "0"],
          "z": ["1/4*L1*(q-n1+1)*(n1-2)", "1/4*L2*(q-n1+1)*(1-q)", "0"], "match": "exact"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "n2^3*(L2*L3*q^2-L2*L3+L1*L3*n1^2-L1*L2*n2^2)", "match": "locus"},
        {"name": "det(n|alpha|delta)", "cols": ["n", "alpha", "delta"],
         "expected": "(q-n1+1)*n2*(L2*L3*n1*(q+1)*(q-2)+(n1-2)*(L1*L3*n1^2-L1*L2*n2^2))",
         "match": "locus"}
      ],
      "note": "the third vector's second slot is (q-n1+1)(1-q), not the displayed (q-n1+1)(2-q)"
    },
    {
      "id": "3.6-(q+1,0,0)",
      "target": ["q+1", "0", "0"],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["q", "0", "1"], "wk": ["L1", "0", "-L3*q"],
          "m": ["1", "0", "1"], "wm": ["L1", "0", "-L3"],
          "z": ["0", "0", "-1/4*L3*(q^2-1)"], "match": "exact"
        }
      ],
      "note": "the surviving slot is -(pi/4) L3 (q^2-1); the display squares the wrong factor"
    },
    {
      "id": "3.8.1-(l,q+1,q+1)",
      "target": ["l", "q+1", "q+1"],
      "loops": [{"var": "l", "from": "1", "to": "q"}],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["l", "q-1", "q"], "wk": ["0", "L2*q", "L3*(1-q)"],
          "m": ["0", "2", "1"], "wm": ["0", "L2", "-2*L3"],
          "z": ["0", "-1/4*L2*(q^2-1)", "-1/4*L3*(q+1)*(q-3)"], "match": "exact"
        },
        {
          "name": "gamma", "order": "YkZm",
          "k": ["l", "q", "q"], "wk": ["L1*q", "-L2*l", "0"],
          "m": ["0", "1", "1"], "wm": ["0", "L2", "-L3"],
          "z": ["0", "-1/4*L2*l", "-1/4*L3*l"], "match": "exact"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "1/8*L2*L3*l^2*(q+1)", "match": "exact"}
      ]
    },
    {
      "id": "3.8.2-(q+1,q+1,l)",
      "target": ["q+1", "q+1", "l"],
      "loops": [{"var": "l", "from": "1", "to": "q"}],
      "quads": [
        {
          "name": "alpha", "order": "ZkYm",
          "k": ["q", "q", "l"], "wk": ["L1*l", "0", "-L3*q"],
          "m": ["1", "1", "0"], "wm": ["L1", "-L2", "0"],
          "z": ["1/4*L1*l", "-1/4*L2*l", "0"], "match": "exact"
        },
        {
          "name": "gamma", "order": "ZkYm",
          "k": ["q", "q-1", "l"], "wk": ["L1*(q-1)", "-L2*q", "0"],
          "m": ["1", "2", "0"], "wm": ["2*L1", "-L2", "0"],
          "z": ["1/4*L1*(q+1)*(q-3)", "-1/4*L2*(q^2-1)", "0"], "match": "exact"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "-1/8*L1*L2*l^2*(q+1)", "match": "exact"}
      ],
      "matrix_dets": [
        {"name": "displayed matrix determinant",
         "cols": [["q+1", "q+1", "l"], ["L1*l", "-L2*l", "0"], ["L1*(q+1)*(q-3)", "-L2*(q^2-1)", "0"]],
         "expected": "-2*L1*L2*l^2*(q+1)"}
      ],
      "note": "the displayed determinant equation carries a stray 32/pi^2 scale and claims positivity; the displayed matrix itself evaluates to -2 L1 L2 l^2 (q+1), and the computed-vector determinant is -(pi^2/8) L1 L2 l^2 (q+1), nonzero as the step needs"
    },
    {
      "id": "3.8.2-(q+1,q+1,0)",
      "target": ["q+1", "q+1", "0"],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["q", "q-1", "1"], "wk": ["L1", "0", "-L3*q"],
          "m": ["1", "2", "1"], "wm": ["L1", "0", "-L3"],
          "z": ["-1/8*L1*(q+1)", "0", "-1/8*L3*(q+1)*(q-1)"], "match": "exact"
        }
      ],
      "note": "only the third slot survives at an x3-independent index; its coefficient -(pi/8)(q^2-1)L3 is the display's"
    },
    {
      "id": "3.9-(q+1,q+1,q+1)",
      "target": ["q+1", "q+1", "q+1"],
      "quads": [
        {
          "name": "alpha", "order": "YkZm",
          "k": ["q", "q-1", "q"], "wk": ["L1", "0", "-L3"],
          "m": ["1", "2", "1"], "wm": ["2*L1", "-L2", "0"],
          "z": ["1/8*L1*(q+1)", "0", "1/8*L3*(q+1)"], "match": "exact"
        },
        {
          "name": "gamma", "order": "YkZm",
          "k": ["q", "q-1", "q"], "wk": ["L1*(q-1)", "-L2*q", "0"],
          "m": ["1", "2", "1"], "wm": ["2*L1", "-L2", "0"],
          "z": ["-1/8*L1*(q+1)*(q-3)", "1/8*L2*(q^2-1)", "0"], "match": "ray"
        }
      ],
      "dets": [
        {"name": "det(n|alpha|gamma)", "cols": ["n", "alpha", "gamma"],
         "expected": "1/64*(q+1)^3*(L2*L3*(q-1)+L1*L3*(q-3)-L1*L2*(q-1))", "match": "exact"}
      ],
      "matrix_dets": [
        {"name": "displayed scaled determinant",
         "cols": [["1", "1", "1"], ["2*L1", "-L2", "0"], ["-L1*(q-3)", "L2*(q-1)", "0"]],
         "expected": "L1*L2*(q+1)"}
      ],
      "note": "the displayed w^m = (2 L3, -L2, 0) violates the eigen constraint for general lengths and is read as (2 L1, -L2, 0); the displayed first vector is not what its quadruple produces (it yields pi/8 (q+1)(L1,0,L3), and no small-coefficient quadruple over this corner produces the display); the displayed second vector is recovered up to sign once its w^k is read as the in-plane vector (L1(q-1), -L2 q, 0); the displayed scaled determinant L1 L2 (q+1) is reproduced as matrix arithmetic from the displayed columns"
    }
  ]
})JSON";

const std::string& builtin_step_scripts_json() {
    static const std::string text = kStepScriptsJson;
    return text;
}

std::vector<StepScript> parse_step_scripts(const std::string& json_text) {
    nlohmann::json root = nlohmann::json::parse(json_text);
    std::vector<StepScript> steps;
    for (const auto& js : root.at("steps")) {
        StepScript s;
        s.id = js.at("id").get<std::string>();
        if (js.contains("note")) s.note = js["note"].get<std::string>();
        for (int i = 0; i < 3; ++i) s.target[i] = js.at("target")[std::size_t(i)].get<std::string>();
        if (js.contains("loops")) {
            for (const auto& jl : js["loops"])
                s.loops.push_back({jl.at("var").get<std::string>(),
                                   jl.at("from").get<std::string>(),
                                   jl.at("to").get<std::string>()});
        }
        if (js.contains("quads")) {
            for (const auto& jq : js["quads"]) {
                QuadrupleScript q;
                q.name = jq.at("name").get<std::string>();
                q.order = jq.at("order").get<std::string>();
                for (int i = 0; i < 3; ++i) {
                    q.k[i] = jq.at("k")[std::size_t(i)].get<std::string>();
                    q.wk[i] = jq.at("wk")[std::size_t(i)].get<std::string>();
                    q.m[i] = jq.at("m")[std::size_t(i)].get<std::string>();
                    q.wm[i] = jq.at("wm")[std::size_t(i)].get<std::string>();
                    q.z_expected[i] = jq.at("z")[std::size_t(i)].get<std::string>();
                }
                q.match = jq.at("match").get<std::string>();
                if (jq.contains("betas")) {
                    for (const auto& jb : jq["betas"])
                        q.betas.push_back({jb.at("w").get<std::string>(),
                                           jb.at("pattern").get<std::string>(),
                                           jb.at("expected").get<std::string>()});
                }
                s.quads.push_back(std::move(q));
            }
        }
        if (js.contains("dets")) {
            for (const auto& jd : js["dets"]) {
                DetScript d;
                d.name = jd.at("name").get<std::string>();
                for (int i = 0; i < 3; ++i) d.cols[i] = jd.at("cols")[std::size_t(i)].get<std::string>();
                d.expected = jd.at("expected").get<std::string>();
                d.match = jd.at("match").get<std::string>();
                s.dets.push_back(std::move(d));
            }
        }
        if (js.contains("matrix_dets")) {
            for (const auto& jm : js["matrix_dets"]) {
                MatrixDetScript m;
                m.name = jm.at("name").get<std::string>();
                for (int c = 0; c < 3; ++c)
                    for (int r = 0; r < 3; ++r)
                        m.cols[std::size_t(c)][std::size_t(r)] =
                            jm.at("cols")[std::size_t(c)][std::size_t(r)].get<std::string>();
                m.expected = jm.at("expected").get<std::string>();
                s.matrix_dets.push_back(std::move(m));
            }
        }
        if (js.contains("eigen_rays")) {
            for (const auto& je : js["eigen_rays"]) {
                EigenRayScript e;
                for (int i = 0; i < 3; ++i) {
                    e.k[i] = je.at("k")[std::size_t(i)].get<std::string>();
                    e.z_expected[i] = je.at("z")[std::size_t(i)].get<std::string>();
                }
                s.eigen_rays.push_back(std::move(e));
            }
        }
        steps.push_back(std::move(s));
    }
    return steps;
}

std::vector<StepScript> builtin_step_scripts() {
    return parse_step_scripts(builtin_step_scripts_json());
}

}  // namespace cylsat
