/** Responses captured verbatim from the running consult service
 * (two-disease, three-treatment model where the risky treatment's
 * clamping splits the remaining two into separate components).
 */

export const stats = {
  "catalog": {
    "diseases": [
      {
        "id": "d_a",
        "name": "disease A"
      },
      {
        "id": "d_b",
        "name": "disease B"
      }
    ],
    "manifestations": [
      {
        "id": "m_a",
        "name": "A-specific sign"
      },
      {
        "id": "m_b",
        "name": "B-specific sign"
      },
      {
        "id": "m_shared",
        "name": "shared sign"
      }
    ],
    "treatments": [
      {
        "id": "t_a",
        "name": "primary treatment for A",
        "treats": [
          "d_a"
        ]
      },
      {
        "id": "t_p",
        "name": "risky treatment for A",
        "treats": [
          "d_a"
        ]
      },
      {
        "id": "t_r",
        "name": "treatment for B",
        "treats": [
          "d_b"
        ]
      }
    ]
  },
  "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
  "stats": {
    "n_arcs": 4,
    "n_diseases": 2,
    "n_manifestations": 3,
    "n_subvalues": 3,
    "n_treatments": 3
  }
} as const;

export const fresh = {
  "findings": {
    "absent": [],
    "present": []
  },
  "id": "mQyqZoPPjqTBnRShQgNzXA",
  "policy": {
    "allow_unsafe_mc": false,
    "budget": null,
    "method": "auto",
    "n_samples": 20000,
    "seed": 0
  },
  "posteriors": {
    "budget_used": 1,
    "evidence_likelihood": 1.0,
    "method": "quickscore",
    "op_count": 2,
    "outer_terms": 1,
    "posteriors": {
      "d_a": 0.02,
      "d_b": 0.03
    }
  },
  "provenance": {
    "budget": 1,
    "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
    "method": "quickscore",
    "thresholds_hash": "6a331c8889142855b311455729576a2a18a9180a9fe89de2446a825454e0a970"
  },
  "prune": [
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.1111111111111112,
          "upper": 0.02
        }
      ],
      "status": "CLAMPED_FALSE",
      "treatment": "t_a"
    },
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.150943396226415,
          "upper": 0.02
        }
      ],
      "status": "CLAMPED_FALSE",
      "treatment": "t_p"
    },
    {
      "justification": [
        {
          "disease": "d_b",
          "threshold": 0.11666666666666659,
          "upper": 0.03
        }
      ],
      "status": "CLAMPED_FALSE",
      "treatment": "t_r"
    }
  ],
  "recommendation": {
    "decisions": {
      "t_a": {
        "component": null,
        "decision": false,
        "source": "PRUNED"
      },
      "t_p": {
        "component": null,
        "decision": false,
        "source": "PRUNED"
      },
      "t_r": {
        "component": null,
        "decision": false,
        "source": "PRUNED"
      }
    },
    "eu_by_component": [],
    "op_count": 0
  },
  "reduced": {
    "active_subvalues": [],
    "active_treatments": [],
    "components": [],
    "provenance": {
      "budget": 1,
      "findings_hash": "91390116cd447427f83d63eaca60aaf331a01f67f3e9bd52ed692d05fb2085a8",
      "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
      "method": "quickscore"
    },
    "retained_diseases": []
  },
  "state_hash": "989e0e3752b48f9b6361a2ca7157c5bebcf811a89ebc2cebdebc24556070d673"
} as const;

export const split = {
  "findings": {
    "absent": [
      "m_shared"
    ],
    "present": [
      "m_a",
      "m_b"
    ]
  },
  "id": "mQyqZoPPjqTBnRShQgNzXA",
  "policy": {
    "allow_unsafe_mc": false,
    "budget": null,
    "method": "auto",
    "n_samples": 20000,
    "seed": 0
  },
  "posteriors": {
    "budget_used": 4,
    "evidence_likelihood": 0.0005629043549998936,
    "method": "quickscore",
    "op_count": 10,
    "outer_terms": 4,
    "posteriors": {
      "d_a": 0.13351016799295154,
      "d_b": 0.25940064897886145
    }
  },
  "provenance": {
    "budget": 4,
    "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
    "method": "quickscore",
    "thresholds_hash": "6a331c8889142855b311455729576a2a18a9180a9fe89de2446a825454e0a970"
  },
  "prune": [
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.1111111111111112,
          "upper": 0.13351016799295154
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_a"
    },
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.150943396226415,
          "upper": 0.13351016799295154
        }
      ],
      "status": "CLAMPED_FALSE",
      "treatment": "t_p"
    },
    {
      "justification": [
        {
          "disease": "d_b",
          "threshold": 0.11666666666666659,
          "upper": 0.25940064897886145
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_r"
    }
  ],
  "recommendation": {
    "decisions": {
      "t_a": {
        "component": 0,
        "decision": true,
        "source": "SOLVED"
      },
      "t_p": {
        "component": null,
        "decision": false,
        "source": "PRUNED"
      },
      "t_r": {
        "component": 1,
        "decision": true,
        "source": "SOLVED"
      }
    },
    "eu_by_component": [
      0.9166224580017681,
      0.9170299675510593
    ],
    "op_count": 4
  },
  "reduced": {
    "active_subvalues": [
      "u_a",
      "u_r"
    ],
    "active_treatments": [
      "t_a",
      "t_r"
    ],
    "components": [
      {
        "diseases": [
          "d_a"
        ],
        "subvalues": [
          "u_a"
        ],
        "treatments": [
          "t_a"
        ]
      },
      {
        "diseases": [
          "d_b"
        ],
        "subvalues": [
          "u_r"
        ],
        "treatments": [
          "t_r"
        ]
      }
    ],
    "provenance": {
      "budget": 4,
      "findings_hash": "9ee207eec8d9154347e8a6fe5470f2755c65b12572d4b9312316ba93593d5c10",
      "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
      "method": "quickscore"
    },
    "retained_diseases": [
      "d_a",
      "d_b"
    ]
  },
  "state_hash": "b4db7e4919f5a3f3325f0c0d03906cb75125703d2603e042e758aef54df4fbd4"
} as const;

export const whatif = {
  "assignment": {
    "t_a": false,
    "t_p": false,
    "t_r": true
  },
  "delta_vs_recommended": -0.009243272882477505,
  "eu": 0.8313269900354563,
  "state_hash": "b4db7e4919f5a3f3325f0c0d03906cb75125703d2603e042e758aef54df4fbd4"
} as const;

export const intervalFresh = {
  "findings": {
    "absent": [],
    "present": []
  },
  "id": "dPY3eUO7TWGzC50ZM8r75w",
  "policy": {
    "allow_unsafe_mc": false,
    "budget": 2,
    "method": "bounds",
    "n_samples": 20000,
    "seed": 0
  },
  "posteriors": {
    "budget_used": 2,
    "method": "bounds",
    "op_count": 2,
    "posteriors": {
      "d_a": [
        0.0,
        0.02000000000002002
      ],
      "d_b": [
        0.0293999999999706,
        0.04940000000004942
      ]
    }
  },
  "provenance": {
    "budget": 2,
    "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
    "method": "bounds",
    "thresholds_hash": "6a331c8889142855b311455729576a2a18a9180a9fe89de2446a825454e0a970"
  },
  "prune": [
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.1111111111111112,
          "upper": 0.02000000000002002
        }
      ],
      "status": "CLAMPED_FALSE",
      "treatment": "t_a"
    },
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.150943396226415,
          "upper": 0.02000000000002002
        }
      ],
      "status": "CLAMPED_FALSE",
      "treatment": "t_p"
    },
    {
      "justification": [
        {
          "disease": "d_b",
          "threshold": 0.11666666666666659,
          "upper": 0.04940000000004942
        }
      ],
      "status": "CLAMPED_FALSE",
      "treatment": "t_r"
    }
  ],
  "recommendation": {
    "decisions": {
      "t_a": {
        "component": null,
        "decision": false,
        "source": "PRUNED"
      },
      "t_p": {
        "component": null,
        "decision": false,
        "source": "PRUNED"
      },
      "t_r": {
        "component": null,
        "decision": false,
        "source": "PRUNED"
      }
    },
    "eu_by_component": [],
    "op_count": 0
  },
  "reduced": {
    "active_subvalues": [],
    "active_treatments": [],
    "components": [],
    "provenance": {
      "budget": 2,
      "findings_hash": "91390116cd447427f83d63eaca60aaf331a01f67f3e9bd52ed692d05fb2085a8",
      "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
      "method": "bounds"
    },
    "retained_diseases": []
  },
  "state_hash": "add44d895923e18edd3d6bb4861e17376d308e14bfa6fcb2e0efe90f4090e0d5"
} as const;

export const interval = {
  "findings": {
    "absent": [],
    "present": [
      "m_a"
    ]
  },
  "id": "dPY3eUO7TWGzC50ZM8r75w",
  "policy": {
    "allow_unsafe_mc": false,
    "budget": 2,
    "method": "bounds",
    "n_samples": 20000,
    "seed": 0
  },
  "posteriors": {
    "budget_used": 2,
    "method": "bounds",
    "op_count": 2,
    "posteriors": {
      "d_a": [
        0.0,
        0.50505050505101
      ],
      "d_b": [
        0.01484848484847,
        0.5198989898995098
      ]
    }
  },
  "provenance": {
    "budget": 2,
    "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
    "method": "bounds",
    "thresholds_hash": "6a331c8889142855b311455729576a2a18a9180a9fe89de2446a825454e0a970"
  },
  "prune": [
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.1111111111111112,
          "upper": 0.50505050505101
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_a"
    },
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.150943396226415,
          "upper": 0.50505050505101
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_p"
    },
    {
      "justification": [
        {
          "disease": "d_b",
          "threshold": 0.11666666666666659,
          "upper": 0.5198989898995098
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_r"
    }
  ],
  "recommendation": {
    "decisions": {
      "t_a": {
        "component": 0,
        "decision": true,
        "source": "SOLVED"
      },
      "t_p": {
        "component": 0,
        "decision": true,
        "source": "SOLVED"
      },
      "t_r": {
        "component": 1,
        "decision": false,
        "source": "SOLVED"
      }
    },
    "eu_by_component": [
      0.855846902017291,
      0.9804999999999999
    ],
    "op_count": 6
  },
  "reduced": {
    "active_subvalues": [
      "u_a",
      "u_r",
      "u_x"
    ],
    "active_treatments": [
      "t_a",
      "t_p",
      "t_r"
    ],
    "components": [
      {
        "diseases": [
          "d_a",
          "d_b"
        ],
        "subvalues": [
          "u_a",
          "u_x"
        ],
        "treatments": [
          "t_a",
          "t_p"
        ]
      },
      {
        "diseases": [
          "d_b"
        ],
        "subvalues": [
          "u_r"
        ],
        "treatments": [
          "t_r"
        ]
      }
    ],
    "provenance": {
      "budget": 2,
      "findings_hash": "01de5f7043714dedf36b9fe340d4a9e9ff9b092597b7a5f74fbf269761e8a033",
      "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
      "method": "bounds"
    },
    "retained_diseases": [
      "d_a",
      "d_b"
    ]
  },
  "state_hash": "0c4b00df0987478e83e73ffaa740ba42b92841f3a411f2deec8cf4108caf69ad"
} as const;

export const marked = {
  "findings": {
    "absent": [],
    "present": [
      "m_a",
      "m_b"
    ]
  },
  "id": "dPY3eUO7TWGzC50ZM8r75w",
  "policy": {
    "allow_unsafe_mc": false,
    "budget": 2,
    "method": "bounds",
    "n_samples": 20000,
    "seed": 0
  },
  "posteriors": {
    "budget_used": 2,
    "method": "bounds",
    "op_count": 2,
    "posteriors": {
      "d_a": [
        0.0,
        0.9604219709981378
      ],
      "d_b": [
        0.02131848649020303,
        0.9817404574883836
      ]
    }
  },
  "provenance": {
    "budget": 2,
    "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
    "method": "bounds",
    "thresholds_hash": "6a331c8889142855b311455729576a2a18a9180a9fe89de2446a825454e0a970"
  },
  "prune": [
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.1111111111111112,
          "upper": 0.9604219709981378
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_a"
    },
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.150943396226415,
          "upper": 0.9604219709981378
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_p"
    },
    {
      "justification": [
        {
          "disease": "d_b",
          "threshold": 0.11666666666666659,
          "upper": 0.9817404574883836
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_r"
    }
  ],
  "recommendation": {
    "decisions": {
      "t_a": {
        "component": 0,
        "decision": true,
        "source": "SOLVED"
      },
      "t_p": {
        "component": 0,
        "decision": false,
        "source": "SOLVED"
      },
      "t_r": {
        "component": 1,
        "decision": true,
        "source": "SOLVED"
      }
    },
    "eu_by_component": [
      0.8412103746397694,
      0.9030677764565993
    ],
    "op_count": 6
  },
  "reduced": {
    "active_subvalues": [
      "u_a",
      "u_r",
      "u_x"
    ],
    "active_treatments": [
      "t_a",
      "t_p",
      "t_r"
    ],
    "components": [
      {
        "diseases": [
          "d_a",
          "d_b"
        ],
        "subvalues": [
          "u_a",
          "u_x"
        ],
        "treatments": [
          "t_a",
          "t_p"
        ]
      },
      {
        "diseases": [
          "d_b"
        ],
        "subvalues": [
          "u_r"
        ],
        "treatments": [
          "t_r"
        ]
      }
    ],
    "provenance": {
      "budget": 2,
      "findings_hash": "2faad1d488795e2056ebfcb6dec6aa87e1e59b9d1a253580650d01bb099af9e2",
      "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
      "method": "bounds"
    },
    "retained_diseases": [
      "d_a",
      "d_b"
    ]
  },
  "state_hash": "a410de94ce33a88433b6ea5c31c61b67c5da987ac86f88d7ab151a5c09e6e5d6"
} as const;

export const unmarked = {
  "findings": {
    "absent": [],
    "present": [
      "m_a"
    ]
  },
  "id": "dPY3eUO7TWGzC50ZM8r75w",
  "policy": {
    "allow_unsafe_mc": false,
    "budget": 2,
    "method": "bounds",
    "n_samples": 20000,
    "seed": 0
  },
  "posteriors": {
    "budget_used": 2,
    "method": "bounds",
    "op_count": 2,
    "posteriors": {
      "d_a": [
        0.0,
        0.50505050505101
      ],
      "d_b": [
        0.01484848484847,
        0.5198989898995098
      ]
    }
  },
  "provenance": {
    "budget": 2,
    "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
    "method": "bounds",
    "thresholds_hash": "6a331c8889142855b311455729576a2a18a9180a9fe89de2446a825454e0a970"
  },
  "prune": [
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.1111111111111112,
          "upper": 0.50505050505101
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_a"
    },
    {
      "justification": [
        {
          "disease": "d_a",
          "threshold": 0.150943396226415,
          "upper": 0.50505050505101
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_p"
    },
    {
      "justification": [
        {
          "disease": "d_b",
          "threshold": 0.11666666666666659,
          "upper": 0.5198989898995098
        }
      ],
      "status": "ACTIVE",
      "treatment": "t_r"
    }
  ],
  "recommendation": {
    "decisions": {
      "t_a": {
        "component": 0,
        "decision": true,
        "source": "SOLVED"
      },
      "t_p": {
        "component": 0,
        "decision": true,
        "source": "SOLVED"
      },
      "t_r": {
        "component": 1,
        "decision": false,
        "source": "SOLVED"
      }
    },
    "eu_by_component": [
      0.855846902017291,
      0.9804999999999999
    ],
    "op_count": 6
  },
  "reduced": {
    "active_subvalues": [
      "u_a",
      "u_r",
      "u_x"
    ],
    "active_treatments": [
      "t_a",
      "t_p",
      "t_r"
    ],
    "components": [
      {
        "diseases": [
          "d_a",
          "d_b"
        ],
        "subvalues": [
          "u_a",
          "u_x"
        ],
        "treatments": [
          "t_a",
          "t_p"
        ]
      },
      {
        "diseases": [
          "d_b"
        ],
        "subvalues": [
          "u_r"
        ],
        "treatments": [
          "t_r"
        ]
      }
    ],
    "provenance": {
      "budget": 2,
      "findings_hash": "01de5f7043714dedf36b9fe340d4a9e9ff9b092597b7a5f74fbf269761e8a033",
      "kb_hash": "e145fced5f6db1e627a4baec3ce84eb15b89dee990937235c61ce49b8731b209",
      "method": "bounds"
    },
    "retained_diseases": [
      "d_a",
      "d_b"
    ]
  },
  "state_hash": "0c4b00df0987478e83e73ffaa740ba42b92841f3a411f2deec8cf4108caf69ad"
} as const;

