fn main() {
    println!("knotex");
}
