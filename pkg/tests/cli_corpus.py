"""CLI invocations exercised by the test suite, with their expected exit codes."""

CORPUS = [
    (["operad", "builtin", "--name", "lie", "--max-arity", "4"], 0),
    (["operad", "builtin", "--name", "poisson(2)", "--max-arity", "3", "--json"], 0),
    (["operad", "check", "--name", "assoc", "--max-arity", "4"], 0),
    (["operad", "free", "--gen", "2", "--max-arity", "4", "--check"], 0),
    (["operad", "quadratic", "--preset", "lie", "--max-arity", "4"], 0),
    (["operad", "primgen", "--gen", "3", "--max-arity", "4"], 1),
    (["operad", "primgen", "--name", "com", "--max-arity", "4"], 0),
    (["operad", "induced", "--triple", "assoc", "--max-arity", "4"], 0),
    (["operad", "induced", "--triple", "free-lie", "--max-arity", "4", "--json"], 0),
    (["operad", "roundtrip", "--name", "lie", "--max-arity", "4"], 0),
    (["triple", "check", "--name", "com", "--max-arity", "4"], 0),
    (["triple", "check", "--name", "assoc", "--max-arity", "3", "--perturb", "2:0:0:2"], 1),
    (["triple", "nu", "--name", "lie", "--max-arity", "4"], 0),
    (["triple", "compat", "--name", "lie", "--max-arity", "4", "--dim", "2", "--degree", "4"], 0),
    (["triple", "compat", "--name", "assoc", "--max-arity", "3", "--perturb", "2:0:0:2"], 1),
    (["algebra", "free", "--operad", "lie", "--dim", "2", "--degree", "5"], 0),
    (["algebra", "check", "--operad", "com", "--dim", "2", "--degree", "4"], 0),
    (["algebra", "tower", "--operad", "assoc", "--dim", "2", "--degree", "4", "--mode", "derived"], 0),
    (["algebra", "layers", "--operad", "lie", "--dim", "2", "--degree", "5", "--n", "3"], 0),
    (["algebra", "split", "--operad", "com", "--degree", "5"], 0),
    (["algebra", "split", "--operad", "com", "--degree", "5", "--relation", "1:1"], 1),
    (["algebra", "leray", "--algebra", "ext-poly", "--degree", "6"], 0),
    (["algebra", "pbw", "--degree", "6", "--json"], 0),
    (["hh", "--vars", "2", "--q-max", "3", "--degree", "4"], 0),
    (["calc", "cross", "--functor", "assoc", "--n", "2", "--degree", "2"], 0),
    (["calc", "taylor", "--functor", "lie", "--dim", "2", "--n", "3"], 0),
    (["calc", "diff", "--functor", "com", "--degree", "4"], 0),
    (["calc", "split", "--functor", "assoc", "--dim", "1", "--degree", "3", "--seedless"], 0),
    (["operad", "builtin", "--name", "nosuch"], 2),
    (["operad", "frobnicate"], 2),
]
