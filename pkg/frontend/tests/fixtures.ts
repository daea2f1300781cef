// Payloads captured verbatim from a live service run; the tests treat them
// as the contract. Regenerate by re-running the capture commands in the
// README against a fresh server.

import type {
  ActivityDetail,
  ChecklistResult,
  PathResponse,
  ScenarioPayload,
  SessionSnapshot,
} from "../src/types.js";

export const pathResponse: PathResponse = {
  "request": {
    "activities": [
      "risk_analysis",
      "cost_estimation",
      "schedule_estimation",
      "price_analysis",
      "tradeoff_analysis"
    ],
    "priority": [
      "completeness"
    ],
    "pinned": {},
    "tie_break": "declaration_order"
  },
  "path": {
    "choices": [
      {
        "activity": "risk_analysis",
        "activity_name": "Risk Analysis",
        "method": "monte_carlo_simulation",
        "method_name": "Monte Carlo Simulation",
        "coverage": {
          "satisfied": [
            "personnel",
            "time",
            "completeness"
          ]
        },
        "tied_alternatives": [
          "fault_tree_analysis",
          "event_tree_analysis"
        ]
      },
      {
        "activity": "cost_estimation",
        "activity_name": "Cost Estimation",
        "method": "cocomo_ii",
        "method_name": "COCOMO II",
        "coverage": {
          "satisfied": [
            "completeness"
          ]
        },
        "tied_alternatives": [
          "function_point_approach"
        ]
      },
      {
        "activity": "schedule_estimation",
        "activity_name": "Schedule Estimation",
        "method": "pert",
        "method_name": "PERT",
        "coverage": {
          "satisfied": [
            "completeness"
          ]
        },
        "tied_alternatives": [
          "cpm"
        ]
      },
      {
        "activity": "price_analysis",
        "activity_name": "Price Analysis",
        "method": "comparative_price_analysis",
        "method_name": "Comparative Price Analysis",
        "coverage": {
          "satisfied": [
            "completeness"
          ]
        },
        "tied_alternatives": [
          "value_analysis"
        ]
      },
      {
        "activity": "tradeoff_analysis",
        "activity_name": "Tradeoff Analysis",
        "method": "pmi",
        "method_name": "PMI",
        "coverage": {
          "satisfied": [
            "completeness"
          ]
        },
        "tied_alternatives": [
          "decision_analysis",
          "internal_rate_of_return",
          "net_present_value"
        ]
      }
    ],
    "distinct_method_count": 5
  },
  "explanation": [
    {
      "activity": "risk_analysis",
      "method": "monte_carlo_simulation",
      "satisfied": [
        "personnel",
        "time",
        "completeness"
      ],
      "strengths": [
        "Broad outcome coverage from a single model",
        "Modest staffing once the model exists",
        "Reruns are fast and cheap"
      ],
      "weaknesses": [
        "Up-front modelling effort",
        "Results are only as good as the input distributions"
      ],
      "tie_break_applied": true,
      "rejected": [
        {
          "method": "fmeca",
          "satisfied": [
            "personnel",
            "cost"
          ]
        },
        {
          "method": "criticality_analysis",
          "satisfied": [
            "time",
            "cost"
          ]
        },
        {
          "method": "fault_tree_analysis",
          "satisfied": [
            "completeness"
          ]
        },
        {
          "method": "event_tree_analysis",
          "satisfied": [
            "completeness"
          ]
        },
        {
          "method": "risk_reduction_leverage",
          "satisfied": []
        }
      ]
    },
    {
      "activity": "cost_estimation",
      "method": "cocomo_ii",
      "satisfied": [
        "completeness"
      ],
      "strengths": [
        "Calibrated model with published factor tables"
      ],
      "weaknesses": [
        "Needs reliable size estimates up front"
      ],
      "tie_break_applied": true,
      "rejected": [
        {
          "method": "function_point_approach",
          "satisfied": [
            "completeness"
          ]
        }
      ]
    },
    {
      "activity": "schedule_estimation",
      "method": "pert",
      "satisfied": [
        "completeness"
      ],
      "strengths": [
        "Handles uncertain task durations explicitly"
      ],
      "weaknesses": [
        "Assumes task independence that rarely holds"
      ],
      "tie_break_applied": true,
      "rejected": [
        {
          "method": "cpm",
          "satisfied": [
            "completeness"
          ]
        }
      ]
    },
    {
      "activity": "price_analysis",
      "method": "comparative_price_analysis",
      "satisfied": [
        "completeness"
      ],
      "strengths": [
        "Grounded in observable market prices"
      ],
      "weaknesses": [
        "Comparable products may not exist for novel systems"
      ],
      "tie_break_applied": true,
      "rejected": [
        {
          "method": "value_analysis",
          "satisfied": [
            "completeness"
          ]
        }
      ]
    },
    {
      "activity": "tradeoff_analysis",
      "method": "pmi",
      "satisfied": [
        "completeness"
      ],
      "strengths": [
        "Fast structured pass over pros and cons"
      ],
      "weaknesses": [
        "No weighting of factor importance"
      ],
      "tie_break_applied": true,
      "rejected": [
        {
          "method": "decision_analysis",
          "satisfied": [
            "completeness"
          ]
        },
        {
          "method": "internal_rate_of_return",
          "satisfied": [
            "completeness"
          ]
        },
        {
          "method": "net_present_value",
          "satisfied": [
            "completeness"
          ]
        }
      ]
    }
  ]
};

export const checklistFail: ChecklistResult = {
  "items": {
    "quality_inspected": {
      "passed": false,
      "evidence": "not inspected: r1:non_ambiguity=unverified, r1:correctness=unverified, r1:verifiability=unverified, r1:completeness=unverified, r1:traceability=unverified, r1:consistency=unverified, r2:non_ambiguity=unverified, r2:correctness=unverified, r2:verifiability=unverified, r2:completeness=unverified, r2:traceability=unverified, r2:consistency=unverified"
    },
    "traced_to_needs": {
      "passed": false,
      "evidence": "requirements without needs: r2; needs without requirements: n2"
    },
    "stakeholder_agreement": {
      "passed": false,
      "evidence": "no stakeholder attestation"
    }
  },
  "passed": false,
  "session_version": 4,
  "phase": "local_analysis"
};

export const sessionSnapshot: SessionSnapshot = {
  "id": "fx",
  "kb_version": "1.0.0",
  "version": 4,
  "phase_state": {
    "phase": "local_analysis",
    "local_iteration": 1,
    "business_cursor": null
  },
  "needs": [
    {
      "id": "n1",
      "statement": "persist carts",
      "source": ""
    },
    {
      "id": "n2",
      "statement": "fast checkout",
      "source": ""
    }
  ],
  "increments": [
    {
      "id": "inc1",
      "label": "core",
      "iteration": 1,
      "requirement_ids": [
        "r1",
        "r2"
      ]
    }
  ],
  "requirements": [
    {
      "id": "r1",
      "text": "the cart persists",
      "kind": "functional",
      "parent": null,
      "attributes": {
        "risk": null,
        "customer_importance": null,
        "effort": null
      },
      "rationale": null,
      "need_links": [
        "n1"
      ],
      "models": [],
      "verification": {
        "non_ambiguity": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "correctness": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "verifiability": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "completeness": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "traceability": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "consistency": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        }
      }
    },
    {
      "id": "r2",
      "text": "checkout stays under two seconds",
      "kind": "non_functional",
      "parent": null,
      "attributes": {
        "risk": null,
        "customer_importance": null,
        "effort": null
      },
      "rationale": null,
      "need_links": [],
      "models": [],
      "verification": {
        "non_ambiguity": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "correctness": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "verifiability": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "completeness": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "traceability": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        },
        "consistency": {
          "status": "unverified",
          "scope": "local",
          "note": ""
        }
      }
    }
  ],
  "conflicts": [],
  "artifacts": [],
  "method_log": [],
  "attested": false,
  "attestation_note": "",
  "global_validation_requested": false
};

export const riskActivityDetail: ActivityDetail = {
  "activity": {
    "id": "risk_analysis",
    "name": "Risk Analysis",
    "objective": "Estimate risk in the development of system components",
    "phase": {
      "phase": "business_concerns",
      "rank": 4
    },
    "applicable_methods": [
      "fmeca",
      "monte_carlo_simulation",
      "criticality_analysis",
      "fault_tree_analysis",
      "event_tree_analysis",
      "risk_reduction_leverage"
    ]
  },
  "methods": [
    {
      "id": "fmeca",
      "name": "FMECA",
      "description": "Failure mode, effects, and criticality analysis of system components.",
      "strengths": [
        "Systematic per-component failure coverage",
        "Runs with a small analyst team"
      ],
      "weaknesses": [
        "Tedious for large component counts",
        "Weak on interaction failures"
      ],
      "citations": [
        "MIL-STD-1629A (1977)"
      ]
    },
    {
      "id": "monte_carlo_simulation",
      "name": "Monte Carlo Simulation",
      "description": "Stochastic simulation of risk outcomes over many sampled runs.",
      "strengths": [
        "Broad outcome coverage from a single model",
        "Modest staffing once the model exists",
        "Reruns are fast and cheap"
      ],
      "weaknesses": [
        "Up-front modelling effort",
        "Results are only as good as the input distributions"
      ],
      "citations": []
    },
    {
      "id": "criticality_analysis",
      "name": "Criticality Analysis",
      "description": "Ranks components by severity and likelihood of failure.",
      "strengths": [
        "Quick to perform",
        "Low cost to run"
      ],
      "weaknesses": [
        "Narrower coverage than simulation-based analysis"
      ],
      "citations": [
        "MIL-STD-1629A (1977)"
      ]
    },
    {
      "id": "fault_tree_analysis",
      "name": "Fault Tree Analysis",
      "description": "Top-down deductive failure analysis from an undesired event.",
      "strengths": [
        "Thorough cause coverage for a chosen hazard"
      ],
      "weaknesses": [
        "Labour-intensive tree construction"
      ],
      "citations": [
        "Raafat, Risk Assessment and Machinery Safety (1989)"
      ]
    },
    {
      "id": "event_tree_analysis",
      "name": "Event Tree Analysis",
      "description": "Forward analysis of outcome chains following an initiating event.",
      "strengths": [
        "Thorough outcome coverage per initiating event"
      ],
      "weaknesses": [
        "Trees grow quickly with branching factor"
      ],
      "citations": [
        "Raafat, Risk Assessment and Machinery Safety (1989)"
      ]
    },
    {
      "id": "risk_reduction_leverage",
      "name": "Risk Reduction Leverage",
      "description": "Prioritizes mitigations by risk-reduction return per unit cost.",
      "strengths": [],
      "weaknesses": [],
      "citations": []
    }
  ],
  "groups": [
    {
      "activity": "risk_analysis",
      "criterion": "personnel",
      "members": [
        "fmeca",
        "monte_carlo_simulation"
      ]
    },
    {
      "activity": "risk_analysis",
      "criterion": "time",
      "members": [
        "criticality_analysis",
        "monte_carlo_simulation"
      ]
    },
    {
      "activity": "risk_analysis",
      "criterion": "cost",
      "members": [
        "fmeca",
        "criticality_analysis"
      ]
    },
    {
      "activity": "risk_analysis",
      "criterion": "completeness",
      "members": [
        "monte_carlo_simulation",
        "fault_tree_analysis",
        "event_tree_analysis"
      ]
    }
  ]
};

export const riskScenario: ScenarioPayload = {
  "activity": "risk_analysis",
  "value": "normal",
  "warnings": []
};
