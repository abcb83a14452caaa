use clap::Parser;
use gourds_service::router;
use gourds_service::session::Store;
use std::net::{IpAddr, SocketAddr};
use std::sync::Arc;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "gourds-service", version, about = "HTTP play sessions for the Gourds puzzle")]
struct Args {
    #[arg(long, default_value = "127.0.0.1")]
    bind: IpAddr,
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Seconds without access before a session is dropped.
    #[arg(long, default_value_t = 3600)]
    idle_secs: u64,
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let args = Args::parse();
    let store = Arc::new(Store::new(Duration::from_secs(args.idle_secs)));
    let sweeper = store.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.sweep();
        }
    });
    let addr = SocketAddr::new(args.bind, args.port);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("gourds-service listening on {}", listener.local_addr()?);
    axum::serve(listener, router(store)).await
}
