def ids(C, *names):
    return tuple(C.morphism_id(n) for n in names)


def mid(C, name):
    return C.morphism_id(name)
