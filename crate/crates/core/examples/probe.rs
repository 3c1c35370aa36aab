fn main() {
    use delcont_core::syntax::{Formula, Sort, IndTerm};
    let nv = |n: &str| IndTerm::nvar(n);
    let f1 = Formula::forall("k", Sort::Base, Formula::eq(nv("k"), nv("k")));
    println!("refl lemma: {:?}", delcont_core::arith::validate_lemma("refl", &f1));
    let f2 = Formula::forall("k", Sort::Base, Formula::forall("j", Sort::Base,
        Formula::eq(IndTerm::apps(IndTerm::cnst("min"), [nv("k"), nv("j")]), nv("k"))));
    println!("validating false min lemma...");
    let r = delcont_core::arith::validate_lemma("bad", &f2);
    println!("result: {:?}", r);
}
