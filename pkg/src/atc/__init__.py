"""Workbench for evolving action domain descriptions in multimodal K_n.

Library layout:

    formula       propositional engine (masks, prime implicants, classical -)
    laws          law and theory data model
    parsing       text/JSON formats, parser and printers
    kripke        models, truth, canonical frames, closeness
    entailment    biggest-model entailment, modularity, consistency
    modelchange   semantic contraction and revision of (sets of) models
    theorychange  Algorithms for syntactic contraction, support sets,
                  model-set-to-theory compilation
    postulates    checking harness for the change postulates
    figures       matplotlib rendering of model graphs
    cli, service  batch frontend and the HTTP session service
"""

__version__ = "0.1.0"
