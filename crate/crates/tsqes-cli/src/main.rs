fn main() {
    println!("tsqes");
}
