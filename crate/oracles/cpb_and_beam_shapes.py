import numpy as np
from scipy import integrate, optimize
def cpb(EC,EJ0,ng,flux,nmax,center=None):
    if center is None: center=int(np.floor(ng+0.5))
    ns=np.arange(center-nmax,center+nmax+1)
    EJ=EJ0*abs(np.cos(np.pi*flux))
    H=np.diag(4*EC*(ns-ng)**2)-EJ/2*(np.eye(len(ns),k=1)+np.eye(len(ns),k=-1))
    return np.linalg.eigh(H)
w,_=cpb(1.8e9,11.7e9,0.5,0,10); print("dE ng.5 flux0 nmax10", repr(w[1]-w[0]), (w[1]-w[0])/11.7e9)
w5,_=cpb(1.8e9,11.7e9,0.5,0,5); print("nmax5",repr(w5[1]-w5[0]))
w,_=cpb(1.8e9,11.7e9,0.25,0.5,10); print("ng.25 flux.5",repr(w[1]-w[0]))
w,_=cpb(1.8e9,11.7e9,0.25,0.0,10); print("ng.25 flux0",repr(w[1]-w[0]))
w,_=cpb(1.8e9,11.7e9,0.375,0.0,10); print("ng.375 flux0",repr(w[1]-w[0]))
w,_=cpb(1.8e9,11.7e9,0.5,0.25,10); print("ng.5 flux.25",repr(w[1]-w[0]))
# convergence invariant
worst=0
for EC in [0.5e9,1e9,2e9,5e9]:
  for r in [0.1,1,3,6,10]:
    EJ=r*4*EC
    for ng in [0,0.25,0.5,0.8]:
      a,_=cpb(EC,EJ,ng,0,5); b,_=cpb(EC,EJ,ng,0,7)
      worst=max(worst,max(abs(a[:5]-b[:5]))/EC)
print("worst conv",worst)
# beam
a1=4.730040744862704
def U(x,a):
    s=(np.cosh(a)-np.cos(a))/(np.sinh(a)-np.sin(a))
    return np.cosh(a*x)-np.cos(a*x)-s*(np.sinh(a*x)-np.sin(a*x))
for a in [4.730040744862704,7.853204624095838,10.995607838001671]:
    xs=np.linspace(0,1,200001); u=U(xs,a); m=np.max(abs(u))
    alpha=integrate.quad(lambda x:(U(x,a)/m)**2,0,1,limit=200)[0]
    ubar=integrate.quad(lambda x:(U(x,a)/m),0,1,limit=200)[0]
    print("a",a,"alpha",repr(alpha),"ubar",repr(ubar), "umax",m)
print("---")
for r in [0.1,0.5,1,2,2.5,3,4,6,10]:
    worst=0
    for ng in np.linspace(0,1,11):
      EC=1e9;EJ=r*4*EC
      a,_=cpb(EC,EJ,ng,0,5); b,_=cpb(EC,EJ,ng,0,7); c,_=cpb(EC,EJ,ng,0,9)
      worst=max(worst,max(abs(a[:5]-b[:5]))/EC)
    print(r,worst, max(abs(b[:5]-c[:5]))/EC)
